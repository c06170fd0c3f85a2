#pragma once

// Definition-driven poset oracles: brute-force interval and adjacent-pair
// enumeration straight from the definitions, plus exhaustive generation of
// all labeled strict partial orders on a few elements. Independent of the
// Poset implementation: everything works on a raw closed relation.

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

namespace poset_oracle {

struct BruteForce {
    std::size_t n;
    std::vector<std::vector<bool>> lt;

    bool is_interval(std::uint32_t s) const
    {
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) {
                if (!(s & (1u << p)) || !(s & (1u << q)))
                    continue;
                for (std::size_t r = 0; r < n; ++r)
                    if (lt[p][r] && lt[r][q] && !(s & (1u << r)))
                        return false;
            }
        return true;
    }

    std::set<std::uint32_t> intervals() const
    {
        std::set<std::uint32_t> out;
        for (std::uint32_t s = 0; s < (1u << n); ++s)
            if (is_interval(s))
                out.insert(s);
        return out;
    }

    std::set<std::pair<std::uint32_t, std::uint32_t>> adjacent_pairs() const
    {
        std::set<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t i = 1; i < (1u << n); ++i) {
            if (!is_interval(i))
                continue;
            for (std::uint32_t j = 1; j < (1u << n); ++j) {
                if ((i & j) || !is_interval(j) || !is_interval(i | j))
                    continue;
                bool ok = true;
                for (std::size_t p = 0; p < n && ok; ++p)
                    for (std::size_t q = 0; q < n && ok; ++q)
                        if ((i & (1u << p)) && (j & (1u << q)) && lt[q][p])
                            ok = false;
                if (ok)
                    out.insert({i, j});
            }
        }
        return out;
    }
};

inline std::vector<std::vector<std::vector<bool>>> all_posets(std::size_t n)
{
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j)
                slots.emplace_back(i, j);
    std::vector<std::vector<std::vector<bool>>> out;
    for (std::uint64_t bits = 0; bits < (1ull << slots.size()); ++bits) {
        std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (bits & (1ull << s))
                lt[slots[s].first][slots[s].second] = true;
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                if (lt[i][j] && lt[j][i])
                    ok = false;
                for (std::size_t k = 0; k < n && ok; ++k)
                    if (lt[i][j] && lt[j][k] && !lt[i][k])
                        ok = false;
            }
        if (ok)
            out.push_back(lt);
    }
    return out;
}

} // namespace poset_oracle
