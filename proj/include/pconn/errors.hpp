#pragma once

#include <stdexcept>
#include <string>

namespace pconn {

/// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input document: bad JSON, missing field, wrong tag.
class schema_error : public error {
public:
    using error::error;
};

/// Input parsed fine but violates a semantic rule (cycle in the orbit
/// relation, degree mismatch, unsupported regime, ...).
class validation_error : public error {
public:
    using error::error;
};

/// A truncated-series computation ran out of known coefficients.
class precision_error : public error {
public:
    using error::error;
};

} // namespace pconn
