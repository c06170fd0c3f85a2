#pragma once

#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "pconn/errors.hpp"
#include "pconn/ints.hpp"

namespace pconn {

/// A truncated element of the Novikov ring Z((t)): a Laurent series with
/// finitely many negative-exponent terms, retained up to a precision
/// window.
///
/// Semantics of a value: exponents below min_degree() are exactly zero,
/// exponents in [min_degree(), known_end()) carry the stored coefficients,
/// exponents at or above known_end() are unknown. All arithmetic and
/// comparisons are "to precision": results carry the window on which they
/// are determined by the inputs. precision() counts the retained
/// exponents, known_end() - min_degree().
///
/// Stored coefficients are normalized: no leading zero (min_degree is the
/// true lowest exponent) and no trailing zeros (which are implied known
/// zeros up to the window end). A value with an empty coefficient list is
/// zero to its precision.
class NovikovSeries {
public:
    /// Window end used for exact values (structural zeros, integer
    /// embeddings): far enough away to dominate every finite window.
    static constexpr long long kExact =
        std::numeric_limits<long long>::max() / 4;

    NovikovSeries() : min_deg_(kExact), known_end_(kExact) {}

    static NovikovSeries zero(long long known_end = kExact)
    {
        NovikovSeries s;
        s.min_deg_ = known_end;
        s.known_end_ = known_end;
        return s;
    }

    static NovikovSeries one(long long precision)
    {
        return monomial(0, 1, precision);
    }

    static NovikovSeries monomial(long long exponent, Int coeff,
                                  long long precision)
    {
        return from_coeffs(exponent, {std::move(coeff)}, precision);
    }

    static NovikovSeries from_int(const Int& n)
    {
        NovikovSeries s;
        s.min_deg_ = 0;
        s.known_end_ = kExact;
        if (n != 0)
            s.coeffs_ = {n};
        s.normalize();
        return s;
    }

    /// coeffs[i] is the coefficient of t^{min_degree + i}; exponents past
    /// the precision window are discarded.
    static NovikovSeries from_coeffs(long long min_degree,
                                     std::vector<Int> coeffs,
                                     long long precision)
    {
        if (precision < 1)
            throw validation_error("precision must be positive");
        NovikovSeries s;
        s.min_deg_ = min_degree;
        s.known_end_ = min_degree + precision;
        if (static_cast<long long>(coeffs.size()) > precision)
            coeffs.resize(static_cast<std::size_t>(precision));
        s.coeffs_ = std::move(coeffs);
        s.normalize();
        return s;
    }

    bool is_zero() const { return coeffs_.empty(); }
    long long min_degree() const { return min_deg_; }
    long long known_end() const { return known_end_; }
    long long precision() const { return known_end_ - min_deg_; }
    /// Coefficients from min_degree, trailing zeros trimmed.
    const std::vector<Int>& coeffs() const { return coeffs_; }

    /// First exponent past the stored support.
    long long support_end() const
    {
        return min_deg_ + static_cast<long long>(coeffs_.size());
    }

    /// True when the stored support ends strictly inside the window, i.e.
    /// the value is a Laurent polynomial as far as the precision can tell.
    bool is_polynomial_within_precision() const
    {
        return is_zero() || support_end() < known_end_;
    }

    /// Coefficient of t^n on the known part (zero below the support, zero
    /// on trimmed tails). Callers must keep n below known_end().
    Int coeff_at(long long n) const
    {
        if (n < min_deg_ || n >= support_end())
            return 0;
        return coeffs_[static_cast<std::size_t>(n - min_deg_)];
    }

    Int leading_coeff() const
    {
        return coeffs_.empty() ? Int(0) : coeffs_.front();
    }

    friend NovikovSeries operator-(const NovikovSeries& x)
    {
        NovikovSeries out = x;
        for (auto& c : out.coeffs_)
            c = -c;
        return out;
    }

    friend NovikovSeries operator+(const NovikovSeries& x,
                                   const NovikovSeries& y)
    {
        NovikovSeries out;
        out.known_end_ = std::min(x.known_end_, y.known_end_);
        out.min_deg_ = std::min(x.min_deg_, y.min_deg_);
        if (out.min_deg_ > out.known_end_)
            out.min_deg_ = out.known_end_;
        // coefficients past both supports are known zeros; only the
        // support union needs to be materialized
        const long long hi = std::min(
            out.known_end_, std::max(x.support_end(), y.support_end()));
        const long long len = std::max<long long>(0, hi - out.min_deg_);
        out.coeffs_.assign(static_cast<std::size_t>(len), Int(0));
        for (long long n = out.min_deg_; n < hi; ++n)
            out.coeffs_[static_cast<std::size_t>(n - out.min_deg_)] =
                x.coeff_at(n) + y.coeff_at(n);
        out.normalize();
        return out;
    }

    friend NovikovSeries operator-(const NovikovSeries& x,
                                   const NovikovSeries& y)
    {
        return x + (-y);
    }

    friend NovikovSeries operator*(const NovikovSeries& x,
                                   const NovikovSeries& y)
    {
        // c_n is determined for n < min(x.ke + y.md, y.ke + x.md); the
        // unknown tail of either factor enters above that.
        NovikovSeries out;
        out.min_deg_ = clamp_add(x.min_deg_, y.min_deg_);
        out.known_end_ = std::min(clamp_add(x.known_end_, y.min_deg_),
                                  clamp_add(y.known_end_, x.min_deg_));
        if (out.min_deg_ > out.known_end_)
            out.min_deg_ = out.known_end_;
        // products land below support_end(x) + support_end(y) - 1
        const long long hi =
            std::min(out.known_end_,
                     clamp_add(x.support_end(), y.support_end()) - 1);
        const long long len = std::max<long long>(0, hi - out.min_deg_);
        out.coeffs_.assign(static_cast<std::size_t>(len), Int(0));
        for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
            if (x.coeffs_[i] == 0)
                continue;
            for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
                const long long n =
                    x.min_deg_ + static_cast<long long>(i) + y.min_deg_ +
                    static_cast<long long>(j);
                if (n >= hi)
                    break;
                out.coeffs_[static_cast<std::size_t>(n - out.min_deg_)] +=
                    x.coeffs_[i] * y.coeffs_[j];
            }
        }
        out.normalize();
        return out;
    }

    friend NovikovSeries operator*(const Int& a, const NovikovSeries& x)
    {
        if (a == 0)
            return zero(); // exact: the unknown tail is annihilated too
        NovikovSeries out = x;
        for (auto& c : out.coeffs_)
            c *= a;
        return out;
    }

    /// Multiplication by t^k.
    NovikovSeries shifted(long long k) const
    {
        NovikovSeries out = *this;
        out.min_deg_ = clamp_add(out.min_deg_, k);
        out.known_end_ = clamp_add(out.known_end_, k);
        return out;
    }

    /// Discards every exponent at or above `end` and caps the window
    /// there: the reduction Z((t)) -> Z((t)) / known-above-end.
    NovikovSeries truncated(long long end) const
    {
        NovikovSeries out = *this;
        if (end < out.known_end_) {
            out.known_end_ = end;
            if (out.min_deg_ > end)
                out.min_deg_ = end;
            while (!out.coeffs_.empty() && out.support_end() > end)
                out.coeffs_.pop_back();
            out.normalize();
        }
        return out;
    }

    /// Equal on the common known window.
    friend bool operator==(const NovikovSeries& x, const NovikovSeries& y)
    {
        // beyond both supports the known coefficients are zero anyway
        const long long end =
            std::min(std::min(x.known_end_, y.known_end_),
                     std::max(x.support_end(), y.support_end()));
        for (long long n = std::min(x.min_deg_, y.min_deg_); n < end; ++n)
            if (x.coeff_at(n) != y.coeff_at(n))
                return false;
        return true;
    }
    friend bool operator!=(const NovikovSeries& x, const NovikovSeries& y)
    {
        return !(x == y);
    }

    /// True iff the known supports coincide (window sizes may differ).
    bool same_polynomial(const NovikovSeries& y) const
    {
        if (is_zero() || y.is_zero())
            return is_zero() && y.is_zero();
        return min_deg_ == y.min_deg_ && coeffs_ == y.coeffs_;
    }

    std::string to_string(const std::string& var = "t") const
    {
        if (is_zero())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0)
                continue;
            Int a = coeffs_[i];
            const long long e = min_deg_ + static_cast<long long>(i);
            if (first) {
                if (a < 0) {
                    os << '-';
                    a = -a;
                }
            } else {
                os << (a < 0 ? " - " : " + ");
                if (a < 0)
                    a = -a;
            }
            first = false;
            if (e == 0)
                os << a;
            else {
                if (a != 1)
                    os << a;
                os << var;
                if (e != 1)
                    os << '^' << e;
            }
        }
        return os.str();
    }

private:
    static long long clamp_add(long long a, long long b)
    {
        // windows saturate at the exact sentinel
        if (a >= kExact || b >= kExact)
            return kExact;
        const long long s = a + b;
        return s > kExact ? kExact : s;
    }

    void normalize()
    {
        std::size_t lead = 0;
        while (lead < coeffs_.size() && coeffs_[lead] == 0)
            ++lead;
        if (lead > 0) {
            coeffs_.erase(coeffs_.begin(),
                          coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
            min_deg_ += static_cast<long long>(lead);
        }
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
        if (coeffs_.empty())
            min_deg_ = known_end_;
    }

    long long min_deg_;
    long long known_end_;
    std::vector<Int> coeffs_;
};

/// Euclidean division in Z((t)) with norm |leading coefficient|:
/// num = q * den + r to precision, with r zero or |lead(r)| < |lead(den)|.
/// Heads are reduced by integer division truncated toward zero, so the
/// division runs as long as the head divides exactly and stops at the
/// first head remainder.
inline std::pair<NovikovSeries, NovikovSeries>
novikov_divmod(const NovikovSeries& num, const NovikovSeries& den)
{
    if (den.is_zero())
        throw validation_error("division by zero");
    if (num.is_zero())
        return {num, num};

    const long long q_precision = std::min(num.precision(), den.precision());
    // Series with unbounded windows can have genuinely infinite quotients;
    // give those a generous cap and fail loudly if it is hit.
    const bool unbounded = q_precision >= NovikovSeries::kExact / 2;
    const long long step_cap = unbounded ? 65536 : q_precision;
    const Int d = den.leading_coeff();

    NovikovSeries r = num;
    std::vector<Int> q_coeffs;
    long long q_min = 0;
    bool q_started = false;
    bool capped = false;

    while (!r.is_zero()) {
        const Int c = r.leading_coeff();
        const Int s = c / d; // truncated toward zero
        if (s == 0)
            break; // |c| < |d|: Euclidean condition reached
        const long long shift = r.min_degree() - den.min_degree();
        if (!q_started) {
            q_min = shift;
            q_started = true;
        }
        const long long idx = shift - q_min;
        if (idx >= step_cap) {
            capped = true;
            break;
        }
        if (idx >= static_cast<long long>(q_coeffs.size()))
            q_coeffs.resize(static_cast<std::size_t>(idx) + 1, Int(0));
        q_coeffs[static_cast<std::size_t>(idx)] += s;
        r = r - (s * den.shifted(shift));
        if (!r.is_zero() && int_abs(r.leading_coeff()) < int_abs(d))
            break;
    }
    if (capped && unbounded)
        throw precision_error(
            "insufficient precision: exact series division does not terminate");

    NovikovSeries q =
        q_started
            ? NovikovSeries::from_coeffs(q_min, std::move(q_coeffs),
                                         q_precision)
            : NovikovSeries::zero(std::min(num.known_end(), den.known_end()));
    return {q, r};
}

/// Units of Z((t)) are exactly the series with leading coefficient +-1.
inline bool novikov_is_unit(const NovikovSeries& x)
{
    return !x.is_zero() &&
           (x.leading_coeff() == 1 || x.leading_coeff() == -1);
}

/// Inverse of a unit, to the precision of the input; multiplying back
/// gives 1 on the common window.
inline NovikovSeries novikov_unit_inverse(const NovikovSeries& x)
{
    if (!novikov_is_unit(x))
        throw validation_error("not a unit in the Novikov ring");
    if (x.precision() >= NovikovSeries::kExact / 2)
        throw precision_error(
            "unit inversion needs a finite precision window");
    const long long p = x.precision();
    const Int c0 = x.leading_coeff(); // +-1
    std::vector<Int> inv(static_cast<std::size_t>(p), Int(0));
    inv[0] = c0; // 1/c0 = c0
    for (long long n = 1; n < p; ++n) {
        Int acc = 0;
        for (long long k = 1; k <= n; ++k)
            acc += x.coeff_at(x.min_degree() + k) *
                   inv[static_cast<std::size_t>(n - k)];
        inv[static_cast<std::size_t>(n)] = -c0 * acc;
    }
    return NovikovSeries::from_coeffs(-x.min_degree(), std::move(inv), p);
}

struct AugmentResult {
    Int value;
    /// True when the input was a finite Laurent polynomial within its
    /// precision, so the coefficient sum is the exact augmentation.
    bool exact;
};

/// Sum of the retained coefficients; the evaluation t -> 1 as far as the
/// precision window can see.
inline AugmentResult augment(const NovikovSeries& x)
{
    Int acc = 0;
    for (const auto& c : x.coeffs())
        acc += c;
    return {acc, x.is_polynomial_within_precision()};
}

/// Associate-class representative used in homology reports: shifted so the
/// lowest exponent is zero, signed so the leading coefficient c is
/// positive, and every higher coefficient reduced into [0, c) by further
/// unit multiplications. Two associates in this form agree on the common
/// window, so reported divisors do not depend on unit rescalings made
/// along the way. Units reduce to 1.
inline NovikovSeries canonical_associate(const NovikovSeries& x)
{
    if (x.is_zero())
        return x;
    NovikovSeries out = x.shifted(-x.min_degree());
    if (out.leading_coeff() < 0)
        out = -out;
    const Int c = out.leading_coeff();
    if (c == 1)
        return NovikovSeries::one(out.precision());
    if (out.precision() >= NovikovSeries::kExact / 2)
        throw precision_error(
            "canonical associate form needs a finite precision window");
    auto floor_div = [](const Int& b, const Int& d) -> Int {
        Int q = b / d;
        if (b % d != 0 && ((b < 0) != (d < 0)))
            --q;
        return q;
    };
    for (long long k = 1; k < out.precision(); ++k) {
        const Int b = out.coeff_at(k);
        const Int s = floor_div(b, c);
        if (s == 0)
            continue;
        // multiply by the exact unit 1 - s t^k; the window is preserved
        NovikovSeries unit =
            NovikovSeries::from_int(1) + NovikovSeries::from_int(-s).shifted(k);
        out = out * unit;
    }
    return out;
}

} // namespace pconn
