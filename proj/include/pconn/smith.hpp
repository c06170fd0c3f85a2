#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "pconn/errors.hpp"
#include "pconn/matrix.hpp"

namespace pconn {

/// Euclidean-domain operations used by the diagonalization engine.
struct IntEuclid {
    using R = Int;
    static R zero() { return 0; }
    static R one() { return 1; }
    static bool is_zero(const R& x) { return x == 0; }
    static Int norm(const R& x) { return int_abs(x); }
    static std::pair<R, R> divmod(const R& a, const R& b)
    {
        return {a / b, a % b}; // truncated toward zero
    }
    static R canonical_unit(const R& x) { return x < 0 ? R(-1) : R(1); }
};

struct NovikovEuclid {
    using R = NovikovSeries;
    static R zero() { return NovikovSeries::zero(); }
    static R one() { return NovikovSeries::from_int(1); }
    static bool is_zero(const R& x) { return x.is_zero(); }
    static Int norm(const R& x) { return int_abs(x.leading_coeff()); }
    static std::pair<R, R> divmod(const R& a, const R& b)
    {
        return novikov_divmod(a, b);
    }
    static R canonical_unit(const R& x)
    {
        const Int sign = x.leading_coeff() < 0 ? -1 : 1;
        return NovikovSeries::monomial(-x.min_degree(), sign,
                                       std::max<long long>(x.precision(), 1));
    }
};

namespace detail {

/// Dense elimination working state. Row operations are mirrored into U
/// (premultiplied) and column operations into V (postmultiplied) when
/// transform tracking is on, so D = U * M * V throughout.
template <class Ops>
struct Eliminator {
    using R = typename Ops::R;

    std::vector<std::vector<R>> m;
    std::vector<std::vector<R>> u, v;
    bool track = false;

    std::size_t rows() const { return m.size(); }
    std::size_t cols() const { return m.empty() ? 0 : m[0].size(); }

    void init_transforms()
    {
        track = true;
        u.assign(rows(), std::vector<R>(rows(), Ops::zero()));
        v.assign(cols(), std::vector<R>(cols(), Ops::zero()));
        for (std::size_t i = 0; i < rows(); ++i)
            u[i][i] = Ops::one();
        for (std::size_t j = 0; j < cols(); ++j)
            v[j][j] = Ops::one();
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        std::swap(m[a], m[b]);
        if (track)
            std::swap(u[a], u[b]);
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        for (auto& row : m)
            std::swap(row[a], row[b]);
        if (track)
            for (auto& row : v)
                std::swap(row[a], row[b]);
    }
    /// row_dst += c * row_src
    void add_row(std::size_t dst, std::size_t src, const R& c)
    {
        for (std::size_t j = 0; j < cols(); ++j)
            m[dst][j] = m[dst][j] + c * m[src][j];
        if (track)
            for (std::size_t j = 0; j < rows(); ++j)
                u[dst][j] = u[dst][j] + c * u[src][j];
    }
    /// col_dst += c * col_src
    void add_col(std::size_t dst, std::size_t src, const R& c)
    {
        for (auto& row : m)
            row[dst] = row[dst] + c * row[src];
        if (track)
            for (auto& row : v)
                row[dst] = row[dst] + c * row[src];
    }
    void scale_row(std::size_t i, const R& unit)
    {
        for (auto& x : m[i])
            x = unit * x;
        if (track)
            for (auto& x : u[i])
                x = unit * x;
    }

    std::optional<std::pair<std::size_t, std::size_t>>
    find_pivot(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Int best_norm = 0;
        for (std::size_t i = t; i < rows(); ++i)
            for (std::size_t j = t; j < cols(); ++j) {
                if (Ops::is_zero(m[i][j]))
                    continue;
                const Int n = Ops::norm(m[i][j]);
                if (!best || n < best_norm) {
                    best = {{i, j}};
                    best_norm = n;
                }
            }
        return best;
    }

    /// Brings the submatrix at [t.., t..] to diagonal form.
    void diagonalize_from(std::size_t t)
    {
        for (; t < rows() && t < cols(); ++t) {
            auto pivot = find_pivot(t);
            if (!pivot)
                return;
            swap_rows(t, pivot->first);
            swap_cols(t, pivot->second);
            bool clean = false;
            while (!clean) {
                clean = true;
                for (std::size_t i = t + 1; i < rows(); ++i) {
                    if (Ops::is_zero(m[i][t]))
                        continue;
                    auto [q, r] = Ops::divmod(m[i][t], m[t][t]);
                    if (!Ops::is_zero(q))
                        add_row(i, t, -q);
                    if (!Ops::is_zero(m[i][t])) {
                        // remainder with strictly smaller norm: promote it
                        swap_rows(i, t);
                        clean = false;
                        break;
                    }
                }
                if (!clean)
                    continue;
                for (std::size_t j = t + 1; j < cols(); ++j) {
                    if (Ops::is_zero(m[t][j]))
                        continue;
                    auto [q, r] = Ops::divmod(m[t][j], m[t][t]);
                    if (!Ops::is_zero(q))
                        add_col(j, t, -q);
                    if (!Ops::is_zero(m[t][j])) {
                        swap_cols(j, t);
                        clean = false;
                        break;
                    }
                }
            }
        }
    }

    std::size_t diagonal_rank() const
    {
        std::size_t r = 0;
        while (r < rows() && r < cols() && !Ops::is_zero(m[r][r]))
            ++r;
        return r;
    }

    /// Enforces d_i | d_{i+1} along the diagonal; optionally canonicalizes
    /// each entry by a unit row scaling.
    void normalize_divisors(bool canonicalize)
    {
        bool again = true;
        while (again) {
            again = false;
            const std::size_t r = diagonal_rank();
            for (std::size_t i = 0; i + 1 < r; ++i) {
                auto [q, rem] = Ops::divmod(m[i + 1][i + 1], m[i][i]);
                if (Ops::is_zero(rem))
                    continue;
                add_col(i, i + 1, Ops::one());
                diagonalize_from(i);
                again = true;
                break;
            }
        }
        if (!canonicalize)
            return;
        const std::size_t r = diagonal_rank();
        for (std::size_t i = 0; i < r; ++i) {
            const R unit = Ops::canonical_unit(m[i][i]);
            scale_row(i, unit);
        }
    }
};

template <class R>
std::vector<std::vector<R>> to_dense(const RingMatrix<R>& m, const R& zero)
{
    std::vector<std::vector<R>> out(m.rows(), std::vector<R>(m.cols(), zero));
    for (const auto& [key, v] : m.entries())
        out[key.first][key.second] = v;
    return out;
}

template <class R>
RingMatrix<R> from_dense(const std::vector<std::vector<R>>& dense,
                         const std::vector<std::string>& row_ids,
                         const std::vector<std::string>& col_ids)
{
    RingMatrix<R> out(row_ids, col_ids);
    for (std::size_t i = 0; i < dense.size(); ++i)
        for (std::size_t j = 0; j < dense[i].size(); ++j)
            if (!ring_is_zero(dense[i][j]))
                out.set(row_ids[i], col_ids[j], dense[i][j]);
    return out;
}

} // namespace detail

struct SmithResult {
    RingMatrix<Int> u; ///< invertible over Z, |det| = 1
    RingMatrix<Int> d; ///< diagonal, d_i >= 0, d_i | d_{i+1}
    RingMatrix<Int> v; ///< invertible over Z, |det| = 1
    std::vector<Int> divisors;
    std::size_t rank = 0;
};

/// Smith normal form with transforms: d = u * m * v. Pivot selection takes
/// the entry of smallest |value|, ties broken by (row, col) position.
inline SmithResult smith_normal_form(const RingMatrix<Int>& m)
{
    detail::Eliminator<IntEuclid> e;
    e.m = detail::to_dense(m, Int(0));
    if (e.rows() > 0 && e.cols() > 0) {
        e.init_transforms();
        e.diagonalize_from(0);
        e.normalize_divisors(true);
    } else {
        e.init_transforms();
    }
    SmithResult out;
    out.rank = e.diagonal_rank();
    for (std::size_t i = 0; i < out.rank; ++i)
        out.divisors.push_back(e.m[i][i]);
    out.d = detail::from_dense(e.m, m.row_ids(), m.col_ids());
    out.u = detail::from_dense(e.u, m.row_ids(), m.row_ids());
    out.v = detail::from_dense(e.v, m.col_ids(), m.col_ids());
    return out;
}

struct NovikovDiagonalization {
    std::vector<NovikovSeries> divisors; ///< canonical associates
    std::size_t rank = 0;
};

/// Diagonalization over the Novikov ring by the Euclidean algorithm; the
/// norm of a series is the absolute value of its leading coefficient.
///
/// Cancellations during pivoting can only be certified up to the windows
/// the entries carry. A pivot whose lowest exponent lies at or beyond the
/// end of some computed-zero window would rest on coefficients the run
/// never saw, so that raises "insufficient precision" instead of a silent
/// wrong answer.
inline NovikovDiagonalization
novikov_diagonalize(const RingMatrix<NovikovSeries>& m)
{
    detail::Eliminator<NovikovEuclid> e;
    e.m = detail::to_dense(m, NovikovSeries::zero());
    if (e.rows() > 0 && e.cols() > 0) {
        e.diagonalize_from(0);
        e.normalize_divisors(false);
    }
    long long zero_horizon = NovikovSeries::kExact;
    for (const auto& row : e.m)
        for (const auto& x : row)
            if (x.is_zero() && x.known_end() < zero_horizon)
                zero_horizon = x.known_end();
    NovikovDiagonalization out;
    out.rank = e.diagonal_rank();
    for (std::size_t i = 0; i < out.rank; ++i) {
        if (e.m[i][i].min_degree() >= zero_horizon)
            throw precision_error(
                "insufficient precision while pivoting at entry (" +
                std::to_string(i) + ", " + std::to_string(i) + ")");
        out.divisors.push_back(canonical_associate(e.m[i][i]));
    }
    return out;
}

/// Exact integer determinant (Bareiss fraction-free elimination).
inline Int determinant(const RingMatrix<Int>& m)
{
    if (m.rows() != m.cols())
        throw validation_error("determinant needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    auto a = detail::to_dense(m, Int(0));
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0)
                ++swap_row;
            if (swap_row == n)
                return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

} // namespace pconn
