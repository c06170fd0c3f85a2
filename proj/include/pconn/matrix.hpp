#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pconn/errors.hpp"
#include "pconn/group_ring.hpp"
#include "pconn/ints.hpp"
#include "pconn/novikov.hpp"

namespace pconn {

inline bool ring_is_zero(const Int& x) { return x == 0; }
inline bool ring_is_zero(const GroupRingElem& x) { return x.is_zero(); }
inline bool ring_is_zero(const NovikovSeries& x) { return x.is_zero(); }

inline std::string ring_to_string(const Int& x) { return x.str(); }
inline std::string ring_to_string(const GroupRingElem& x)
{
    return x.to_string();
}
inline std::string ring_to_string(const NovikovSeries& x)
{
    return x.to_string();
}

/// Sparse matrix over a coefficient ring, rows and columns indexed by
/// generator ids. Zero entries are never stored.
template <class R>
class RingMatrix {
public:
    using EntryMap = std::map<std::pair<std::size_t, std::size_t>, R>;

    RingMatrix() = default;
    RingMatrix(std::vector<std::string> row_ids,
               std::vector<std::string> col_ids)
        : row_ids_(std::move(row_ids)), col_ids_(std::move(col_ids))
    {
        for (std::size_t i = 0; i < row_ids_.size(); ++i)
            if (!row_pos_.emplace(row_ids_[i], i).second)
                throw validation_error("duplicate row id '" + row_ids_[i] +
                                       "'");
        for (std::size_t j = 0; j < col_ids_.size(); ++j)
            if (!col_pos_.emplace(col_ids_[j], j).second)
                throw validation_error("duplicate column id '" + col_ids_[j] +
                                       "'");
    }

    const std::vector<std::string>& row_ids() const { return row_ids_; }
    const std::vector<std::string>& col_ids() const { return col_ids_; }
    std::size_t rows() const { return row_ids_.size(); }
    std::size_t cols() const { return col_ids_.size(); }
    const EntryMap& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    std::size_t row_index(const std::string& id) const
    {
        auto it = row_pos_.find(id);
        if (it == row_pos_.end())
            throw validation_error("unknown row id '" + id + "'");
        return it->second;
    }
    std::size_t col_index(const std::string& id) const
    {
        auto it = col_pos_.find(id);
        if (it == col_pos_.end())
            throw validation_error("unknown column id '" + id + "'");
        return it->second;
    }

    void set(const std::string& row, const std::string& col, R value)
    {
        const auto key = std::make_pair(row_index(row), col_index(col));
        if (ring_is_zero(value))
            entries_.erase(key);
        else
            entries_.insert_or_assign(key, std::move(value));
    }

    void accumulate(const std::string& row, const std::string& col,
                    const R& value)
    {
        const auto key = std::make_pair(row_index(row), col_index(col));
        auto it = entries_.find(key);
        if (it == entries_.end()) {
            if (!ring_is_zero(value))
                entries_.emplace(key, value);
            return;
        }
        it->second = it->second + value;
        if (ring_is_zero(it->second))
            entries_.erase(it);
    }

    /// Entry lookup by id; nullptr marks a structural zero.
    const R* find(const std::string& row, const std::string& col) const
    {
        auto it = entries_.find({row_index(row), col_index(col)});
        return it == entries_.end() ? nullptr : &it->second;
    }
    const R* find_by_index(std::size_t row, std::size_t col) const
    {
        auto it = entries_.find({row, col});
        return it == entries_.end() ? nullptr : &it->second;
    }

    friend bool operator==(const RingMatrix& x, const RingMatrix& y)
    {
        return x.row_ids_ == y.row_ids_ && x.col_ids_ == y.col_ids_ &&
               x.entries_ == y.entries_;
    }
    friend bool operator!=(const RingMatrix& x, const RingMatrix& y)
    {
        return !(x == y);
    }

    friend RingMatrix operator+(const RingMatrix& x, const RingMatrix& y)
    {
        if (x.row_ids_ != y.row_ids_ || x.col_ids_ != y.col_ids_)
            throw validation_error("dimension mismatch");
        RingMatrix out = x;
        for (const auto& [key, v] : y.entries_) {
            auto it = out.entries_.find(key);
            if (it == out.entries_.end()) {
                out.entries_.emplace(key, v);
            } else {
                it->second = it->second + v;
                if (ring_is_zero(it->second))
                    out.entries_.erase(it);
            }
        }
        return out;
    }

    friend RingMatrix operator-(const RingMatrix& x)
    {
        RingMatrix out = x;
        for (auto& [key, v] : out.entries_)
            v = -v;
        return out;
    }

    /// Applies the matrix to a coefficient vector indexed by column ids;
    /// absent keys are zero.
    std::map<std::string, R> apply(const std::map<std::string, R>& v) const
    {
        std::map<std::string, R> out;
        for (const auto& [key, entry] : entries_) {
            auto it = v.find(col_ids_[key.second]);
            if (it == v.end())
                continue;
            R term = entry * it->second;
            if (ring_is_zero(term))
                continue;
            const std::string& row = row_ids_[key.first];
            auto [slot, inserted] = out.emplace(row, term);
            if (!inserted) {
                slot->second = slot->second + term;
                if (ring_is_zero(slot->second))
                    out.erase(slot);
            }
        }
        return out;
    }

private:
    std::vector<std::string> row_ids_;
    std::vector<std::string> col_ids_;
    std::map<std::string, std::size_t> row_pos_;
    std::map<std::string, std::size_t> col_pos_;
    EntryMap entries_;
};

/// Matrix product mA * mB; inner index lists must agree exactly.
template <class R>
RingMatrix<R> compose(const RingMatrix<R>& mA, const RingMatrix<R>& mB)
{
    if (mA.col_ids() != mB.row_ids())
        throw validation_error("dimension mismatch");
    RingMatrix<R> out(mA.row_ids(), mB.col_ids());
    // group mB entries by row for the sparse product
    std::map<std::size_t, std::vector<std::pair<std::size_t, const R*>>> by_row;
    for (const auto& [key, v] : mB.entries())
        by_row[key.first].emplace_back(key.second, &v);
    std::map<std::pair<std::size_t, std::size_t>, R> acc;
    for (const auto& [akey, av] : mA.entries()) {
        auto it = by_row.find(akey.second);
        if (it == by_row.end())
            continue;
        for (const auto& [j, bv] : it->second) {
            R term = av * (*bv);
            auto [slot, inserted] = acc.emplace(std::make_pair(akey.first, j),
                                                term);
            if (!inserted)
                slot->second = slot->second + term;
        }
    }
    for (const auto& [key, v] : acc)
        if (!ring_is_zero(v))
            out.set(out.row_ids()[key.first], out.col_ids()[key.second], v);
    return out;
}

template <class R>
RingMatrix<R> identity_matrix(const std::vector<std::string>& ids,
                              const R& one)
{
    RingMatrix<R> out(ids, ids);
    for (const auto& id : ids)
        out.set(id, id, one);
    return out;
}

} // namespace pconn
