#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pconn/errors.hpp"

namespace pconn {

/// A finite strict partial order. Relations are transitively closed on
/// construction; a cycle in the input is rejected.
class Poset {
public:
    Poset() = default;

    static Poset
    from_relations(std::vector<std::string> elements,
                   const std::vector<std::pair<std::string, std::string>>&
                       less_pairs)
    {
        Poset p;
        p.elements_ = std::move(elements);
        for (std::size_t i = 0; i < p.elements_.size(); ++i)
            if (!p.index_.emplace(p.elements_[i], i).second)
                throw validation_error("duplicate poset element '" +
                                       p.elements_[i] + "'");
        const std::size_t n = p.elements_.size();
        p.lt_.assign(n, std::vector<bool>(n, false));
        for (const auto& [lo, hi] : less_pairs)
            p.lt_[p.index_of(lo)][p.index_of(hi)] = true;
        // transitive closure
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (p.lt_[i][k])
                    for (std::size_t j = 0; j < n; ++j)
                        if (p.lt_[k][j])
                            p.lt_[i][j] = true;
        for (std::size_t i = 0; i < n; ++i)
            if (p.lt_[i][i])
                throw validation_error("partial order contains a cycle");
        return p;
    }

    std::size_t size() const { return elements_.size(); }
    const std::vector<std::string>& elements() const { return elements_; }

    std::size_t index_of(const std::string& id) const
    {
        auto it = index_.find(id);
        if (it == index_.end())
            throw validation_error("unknown poset element '" + id + "'");
        return it->second;
    }

    bool less(std::size_t lo, std::size_t hi) const { return lt_[lo][hi]; }
    bool less(const std::string& lo, const std::string& hi) const
    {
        return lt_[index_of(lo)][index_of(hi)];
    }

    bool comparable(std::size_t a, std::size_t b) const
    {
        return lt_[a][b] || lt_[b][a];
    }

    /// Adjacent elements: distinct, with no third element strictly between
    /// them in either direction. Incomparable pairs are adjacent.
    bool adjacent_elements(std::size_t a, std::size_t b) const
    {
        if (a == b)
            return false;
        for (std::size_t c = 0; c < size(); ++c) {
            if (c == a || c == b)
                continue;
            if ((lt_[a][c] && lt_[c][b]) || (lt_[b][c] && lt_[c][a]))
                return false;
        }
        return true;
    }

    /// All intervals as bitmasks: subsets I with a,b in I and a < c < b
    /// forcing c into I. Includes the empty set. Enumeration is explicit,
    /// so the element count is capped.
    std::vector<std::uint32_t> interval_masks() const
    {
        const std::size_t n = size();
        if (n > 16)
            throw validation_error(
                "interval enumeration supports at most 16 elements");
        // between[a][b]: elements strictly between a and b
        std::vector<std::vector<std::uint32_t>> between(
            n, std::vector<std::uint32_t>(n, 0));
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                if (lt_[a][b])
                    for (std::size_t c = 0; c < n; ++c)
                        if (lt_[a][c] && lt_[c][b])
                            between[a][b] |= (1u << c);
        std::vector<std::uint32_t> out;
        for (std::uint32_t s = 0; s < (1u << n); ++s) {
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a) {
                if (!(s & (1u << a)))
                    continue;
                for (std::size_t b = 0; b < n && ok; ++b) {
                    if (!(s & (1u << b)))
                        continue;
                    ok = (between[a][b] & ~s) == 0;
                }
            }
            if (ok)
                out.push_back(s);
        }
        return out;
    }

    std::vector<std::vector<std::string>> intervals() const
    {
        std::vector<std::vector<std::string>> out;
        for (std::uint32_t mask : interval_masks())
            out.push_back(mask_to_ids(mask));
        return out;
    }

    /// Adjacent pairs (I, J): disjoint nonempty intervals whose union is
    /// an interval, with no element of J below any element of I.
    std::vector<std::pair<std::uint32_t, std::uint32_t>>
    adjacent_pair_masks() const
    {
        const auto ivs = interval_masks();
        std::vector<std::uint32_t> interval_set(ivs.begin(), ivs.end());
        std::sort(interval_set.begin(), interval_set.end());
        auto is_interval = [&](std::uint32_t s) {
            return std::binary_search(interval_set.begin(), interval_set.end(),
                                      s);
        };
        std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
        for (std::uint32_t i : ivs) {
            if (i == 0)
                continue;
            for (std::uint32_t j : ivs) {
                if (j == 0 || (i & j) != 0)
                    continue;
                if (!is_interval(i | j))
                    continue;
                bool ok = true;
                for (std::size_t a = 0; a < size() && ok; ++a) {
                    if (!(j & (1u << a)))
                        continue;
                    for (std::size_t b = 0; b < size() && ok; ++b)
                        if ((i & (1u << b)) && lt_[a][b])
                            ok = false;
                }
                if (ok)
                    out.emplace_back(i, j);
            }
        }
        return out;
    }

    std::vector<std::string> mask_to_ids(std::uint32_t mask) const
    {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < size(); ++i)
            if (mask & (1u << i))
                out.push_back(elements_[i]);
        return out;
    }

    /// Deterministic linear extension, minimal elements first, ties by id.
    std::vector<std::string> linear_extension() const
    {
        const std::size_t n = size();
        std::vector<bool> used(n, false);
        std::vector<std::string> out;
        for (std::size_t step = 0; step < n; ++step) {
            std::size_t pick = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (used[i])
                    continue;
                bool minimal = true;
                for (std::size_t j = 0; j < n && minimal; ++j)
                    if (!used[j] && lt_[j][i])
                        minimal = false;
                if (!minimal)
                    continue;
                if (pick == n || elements_[i] < elements_[pick])
                    pick = i;
            }
            used[pick] = true;
            out.push_back(elements_[pick]);
        }
        return out;
    }

    /// True when this order contains every relation of `other` (same
    /// element set, matched by id).
    bool extends(const Poset& other) const
    {
        for (std::size_t a = 0; a < other.size(); ++a)
            for (std::size_t b = 0; b < other.size(); ++b)
                if (other.lt_[a][b] &&
                    !less(other.elements_[a], other.elements_[b]))
                    return false;
        return true;
    }

    friend bool operator==(const Poset&, const Poset&) = default;

private:
    std::vector<std::string> elements_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::vector<bool>> lt_;
};

} // namespace pconn
