#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pconn/errors.hpp"
#include "pconn/matrix.hpp"

namespace pconn {

/// A graded free module: per degree, an ordered list of generator ids.
/// Ids are unique across all degrees so matrices can be indexed globally.
struct GradedModule {
    std::map<int, std::vector<std::string>> generators;

    void validate() const
    {
        std::set<std::string> seen;
        for (const auto& [k, gens] : generators)
            for (const auto& id : gens)
                if (!seen.insert(id).second)
                    throw validation_error("duplicate generator id '" + id +
                                           "'");
    }

    static const std::vector<std::string>& empty()
    {
        static const std::vector<std::string> none;
        return none;
    }

    const std::vector<std::string>& at(int k) const
    {
        auto it = generators.find(k);
        return it == generators.end() ? empty() : it->second;
    }

    std::optional<int> degree_of(const std::string& id) const
    {
        for (const auto& [k, gens] : generators)
            for (const auto& g : gens)
                if (g == id)
                    return k;
        return std::nullopt;
    }

    std::size_t total_rank() const
    {
        std::size_t n = 0;
        for (const auto& [k, gens] : generators)
            n += gens.size();
        return n;
    }

    friend bool operator==(const GradedModule&, const GradedModule&) = default;
};

/// A graded free module together with degree-(-1) boundary matrices.
/// boundary[k] has columns indexed by the degree-k generators and rows by
/// the degree-(k-1) generators; a missing matrix is the zero map.
template <class R>
struct ChainComplex {
    GradedModule module;
    std::map<int, RingMatrix<R>> boundary;

    void validate_shape() const
    {
        module.validate();
        for (const auto& [k, m] : boundary) {
            if (m.col_ids() != module.at(k) ||
                m.row_ids() != module.at(k - 1))
                throw validation_error(
                    "boundary matrix shape does not match the module at degree " +
                    std::to_string(k));
        }
    }

    friend bool operator==(const ChainComplex&, const ChainComplex&) = default;
};

struct BoundarySquaredReport {
    struct Violation {
        int degree; // the composite checked is boundary[degree] o boundary[degree+1]
        std::string row;
        std::string col;
        std::string value;
    };
    bool ok = true;
    std::vector<Violation> violations;
};

/// Checks boundary_k o boundary_{k+1} = 0 for every pair of consecutive
/// boundaries (to precision, for truncated series). A failure is reported
/// entry by entry, not thrown.
template <class R>
BoundarySquaredReport verify_boundary_squared(const ChainComplex<R>& c)
{
    BoundarySquaredReport report;
    for (const auto& [k, bk] : c.boundary) {
        auto next = c.boundary.find(k + 1);
        if (next == c.boundary.end())
            continue;
        RingMatrix<R> sq = compose(bk, next->second);
        for (const auto& [key, v] : sq.entries()) {
            report.ok = false;
            report.violations.push_back({k, sq.row_ids()[key.first],
                                         sq.col_ids()[key.second],
                                         ring_to_string(v)});
        }
    }
    return report;
}

} // namespace pconn
