#pragma once

#include <map>
#include <vector>

#include "pconn/chain_complex.hpp"
#include "pconn/smith.hpp"

namespace pconn {

struct IntHomology {
    long long betti = 0;
    std::vector<Int> torsion; ///< elementary divisors > 1, ascending
};

/// Homology of a chain complex of free Z-modules: Betti numbers and
/// torsion divisors per degree, computed from Smith normal forms of the
/// boundary matrices.
inline std::map<int, IntHomology>
homology_over_Z(const ChainComplex<Int>& c)
{
    if (!verify_boundary_squared(c).ok)
        throw validation_error("not a complex");
    std::map<int, std::size_t> rank;
    std::map<int, std::vector<Int>> divisors;
    for (const auto& [k, b] : c.boundary) {
        auto snf = smith_normal_form(b);
        rank[k] = snf.rank;
        divisors[k] = snf.divisors;
    }
    auto rank_of = [&](int k) -> long long {
        auto it = rank.find(k);
        return it == rank.end() ? 0 : static_cast<long long>(it->second);
    };
    std::map<int, IntHomology> out;
    for (const auto& [k, gens] : c.module.generators) {
        IntHomology h;
        h.betti = static_cast<long long>(gens.size()) - rank_of(k) -
                  rank_of(k + 1);
        if (auto it = divisors.find(k + 1); it != divisors.end())
            for (const auto& d : it->second)
                if (d > 1)
                    h.torsion.push_back(d);
        out[k] = h;
    }
    return out;
}

struct NovikovHomology {
    long long free_rank = 0;
    /// Non-unit elementary divisors in canonical associate form.
    std::vector<NovikovSeries> divisors;
};

/// Homology of a complex of free modules over the Novikov ring, to the
/// precision the boundary entries carry. Divisors that are units
/// contribute nothing and are dropped.
inline std::map<int, NovikovHomology>
homology_over_novikov(const ChainComplex<NovikovSeries>& c)
{
    if (!verify_boundary_squared(c).ok)
        throw validation_error("not a complex");
    std::map<int, std::size_t> rank;
    std::map<int, std::vector<NovikovSeries>> divisors;
    for (const auto& [k, b] : c.boundary) {
        auto diag = novikov_diagonalize(b);
        rank[k] = diag.rank;
        divisors[k] = diag.divisors;
    }
    auto rank_of = [&](int k) -> long long {
        auto it = rank.find(k);
        return it == rank.end() ? 0 : static_cast<long long>(it->second);
    };
    std::map<int, NovikovHomology> out;
    for (const auto& [k, gens] : c.module.generators) {
        NovikovHomology h;
        h.free_rank = static_cast<long long>(gens.size()) - rank_of(k) -
                      rank_of(k + 1);
        if (auto it = divisors.find(k + 1); it != divisors.end())
            for (const auto& d : it->second)
                if (!novikov_is_unit(d))
                    h.divisors.push_back(d);
        out[k] = h;
    }
    return out;
}

} // namespace pconn
