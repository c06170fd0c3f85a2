#pragma once

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "pconn/errors.hpp"
#include "pconn/group.hpp"
#include "pconn/ints.hpp"

namespace pconn {

/// An element of the integral group ring Z[G]: a finite formal sum of
/// group elements with nonzero integer coefficients. Zero coefficients are
/// never stored, so equality is equality of the term maps.
class GroupRingElem {
public:
    using TermMap = std::map<GroupElement, Int, GroupElementLess>;

    explicit GroupRingElem(DeckGroupPtr group) : group_(std::move(group))
    {
        if (!group_)
            throw validation_error("group ring element needs a group");
    }

    static GroupRingElem zero(const DeckGroupPtr& g) { return GroupRingElem(g); }

    static GroupRingElem one(const DeckGroupPtr& g)
    {
        return monomial(g->identity(), 1);
    }

    static GroupRingElem monomial(const GroupElement& g, Int coeff)
    {
        GroupRingElem out(g.group());
        if (coeff != 0)
            out.terms_.emplace(g, std::move(coeff));
        return out;
    }

    const DeckGroupPtr& group() const { return group_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Int coefficient(const GroupElement& g) const
    {
        auto it = terms_.find(g);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(const GroupElement& g, const Int& coeff)
    {
        group_->require_same(g);
        auto [it, inserted] = terms_.emplace(g, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0)
                terms_.erase(it);
        } else if (coeff == 0) {
            terms_.erase(it);
        }
    }

    /// Coefficient sum; the ring homomorphism Z[G] -> Z induced by g -> 1.
    Int augment() const
    {
        Int acc = 0;
        for (const auto& [g, c] : terms_)
            acc += c;
        return acc;
    }

    /// Only trivial units (+-g) are detected; that is all this library
    /// ever needs and the general question is not decidable kind by kind.
    bool is_unit() const
    {
        return terms_.size() == 1 &&
               (terms_.begin()->second == 1 || terms_.begin()->second == -1);
    }

    GroupRingElem unit_inverse() const
    {
        if (!is_unit())
            throw validation_error("not a unit in the group ring");
        const auto& [g, c] = *terms_.begin();
        return monomial(group_->inverse(g), c);
    }

    friend GroupRingElem operator+(const GroupRingElem& x,
                                   const GroupRingElem& y)
    {
        require_same_ring(x, y);
        GroupRingElem out = x;
        for (const auto& [g, c] : y.terms_)
            out.add_term(g, c);
        return out;
    }

    friend GroupRingElem operator-(const GroupRingElem& x)
    {
        GroupRingElem out(x.group_);
        for (const auto& [g, c] : x.terms_)
            out.terms_.emplace(g, -c);
        return out;
    }

    friend GroupRingElem operator-(const GroupRingElem& x,
                                   const GroupRingElem& y)
    {
        return x + (-y);
    }

    friend GroupRingElem operator*(const GroupRingElem& x,
                                   const GroupRingElem& y)
    {
        require_same_ring(x, y);
        GroupRingElem out(x.group_);
        for (const auto& [g, a] : x.terms_)
            for (const auto& [h, b] : y.terms_)
                out.add_term(x.group_->mul(g, h), a * b);
        return out;
    }

    friend GroupRingElem operator*(const Int& a, const GroupRingElem& x)
    {
        GroupRingElem out(x.group_);
        if (a == 0)
            return out;
        for (const auto& [g, c] : x.terms_)
            out.terms_.emplace(g, a * c);
        return out;
    }

    /// Applies an isomorphism of the underlying groups termwise; a ring
    /// isomorphism Z[G1] -> Z[G2].
    template <class Iso>
    GroupRingElem map_terms(const Iso& iso) const
    {
        GroupRingElem out(iso.to());
        for (const auto& [g, c] : terms_)
            out.add_term(iso.apply(g), c);
        return out;
    }

    friend bool operator==(const GroupRingElem& x, const GroupRingElem& y)
    {
        require_same_ring(x, y);
        return x.terms_ == y.terms_;
    }
    friend bool operator!=(const GroupRingElem& x, const GroupRingElem& y)
    {
        return !(x == y);
    }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [g, c] : terms_) {
            Int a = c;
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
            if (g.is_identity())
                os << a;
            else if (a == 1)
                os << group_->to_string(g);
            else
                os << a << ' ' << group_->to_string(g);
        }
        return os.str();
    }

private:
    static void require_same_ring(const GroupRingElem& x,
                                  const GroupRingElem& y)
    {
        if (x.group_ != y.group_ &&
            !x.group_->structurally_equal(*y.group_))
            throw validation_error("ring mismatch");
    }

    DeckGroupPtr group_;
    TermMap terms_;
};

/// Coefficient sum as a free function, matching the series overload.
inline Int augment(const GroupRingElem& x) { return x.augment(); }

} // namespace pconn
