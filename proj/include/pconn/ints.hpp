#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace pconn {

/// Exact arbitrary-precision integer used for every coefficient in the
/// library. Series inverses and convolution chains overflow 64 bits well
/// before the default precision of 32 retained exponents is reached.
using Int = boost::multiprecision::cpp_int;

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int int_gcd(Int a, Int b)
{
    a = int_abs(a);
    b = int_abs(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

inline std::string int_to_string(const Int& x) { return x.str(); }

} // namespace pconn
