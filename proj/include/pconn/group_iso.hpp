#pragma once

#include <map>
#include <string>
#include <vector>

#include "pconn/errors.hpp"
#include "pconn/group.hpp"

namespace pconn {

/// An isomorphism between deck groups, given by generator images and
/// validated on construction. The supported maps are the ones whose
/// invertibility is decidable from the images alone:
///
///   finite          : images must generate and the induced map must be a
///                     bijective homomorphism (checked exhaustively)
///   infinite_cyclic : t -> t^{+-1}
///   free_abelian    : exponent matrix with determinant +-1
///   free            : signed permutation of the generators
///   klein_bottle    : a -> b^k a^{+-1}, b -> b^{+-1}
///
/// Maps between groups of different kinds are rejected.
class GroupIso {
public:
    GroupIso(DeckGroupPtr from, DeckGroupPtr to,
             std::vector<GroupElement> generator_images)
        : from_(std::move(from)), to_(std::move(to)),
          images_(std::move(generator_images))
    {
        if (!from_ || !to_)
            throw validation_error("isomorphism needs both groups");
        if (from_->kind() != to_->kind())
            throw validation_error(
                "isomorphisms between different group kinds are not supported");
        if (images_.size() != from_->generator_names().size())
            throw validation_error("one image per generator is required");
        for (const auto& img : images_)
            to_->require_same(img);
        validate();
    }

    static GroupIso identity(const DeckGroupPtr& g)
    {
        std::vector<GroupElement> images;
        for (std::size_t i = 0; i < g->generator_names().size(); ++i)
            images.push_back(g->generator(static_cast<int>(i)));
        return GroupIso(g, g, std::move(images));
    }

    const DeckGroupPtr& from() const { return from_; }
    const DeckGroupPtr& to() const { return to_; }

    GroupElement apply(const GroupElement& x) const
    {
        from_->require_same(x);
        const auto& nf = x.normal_form();
        switch (from_->kind()) {
        case GroupKind::finite:
            return element_map_.at(nf[0]);
        case GroupKind::infinite_cyclic:
            return to_->pow(images_[0], nf[0]);
        case GroupKind::free_abelian: {
            GroupElement acc = to_->identity();
            for (std::size_t i = 0; i < nf.size(); ++i)
                acc = to_->mul(acc, to_->pow(images_[i], nf[i]));
            return acc;
        }
        case GroupKind::klein_bottle: {
            // b^n a^m -> phi(b)^n phi(a)^m
            GroupElement acc = to_->pow(images_[1], nf[0]);
            return to_->mul(acc, to_->pow(images_[0], nf[1]));
        }
        case GroupKind::free_group: {
            GroupElement acc = to_->identity();
            for (std::size_t i = 0; i < nf.size(); i += 2)
                acc = to_->mul(
                    acc,
                    to_->pow(images_[static_cast<std::size_t>(nf[i])], nf[i + 1]));
            return acc;
        }
        }
        throw error("unreachable");
    }

    GroupIso inverted() const
    {
        return GroupIso(to_, from_, inverse_images_);
    }

private:
    void validate();

    DeckGroupPtr from_;
    DeckGroupPtr to_;
    std::vector<GroupElement> images_;
    std::vector<GroupElement> inverse_images_;
    std::map<long long, GroupElement> element_map_; // finite kind
};

inline void GroupIso::validate()
{
    switch (from_->kind()) {
    case GroupKind::infinite_cyclic: {
        long long e = images_[0].normal_form()[0];
        if (e != 1 && e != -1)
            throw validation_error(
                "infinite cyclic isomorphisms must send t to t or t^-1");
        inverse_images_ = {to_->cyclic_element(e)};
        return;
    }
    case GroupKind::free_abelian: {
        const int n = from_->rank();
        // columns of M are the image exponent vectors
        std::vector<std::vector<long long>> m(n, std::vector<long long>(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                m[i][j] = images_[j].normal_form()[i];
        // integer determinant by cofactor expansion (n is small)
        auto det = [](auto&& self, const std::vector<std::vector<long long>>& a)
            -> long long {
            const int k = static_cast<int>(a.size());
            if (k == 1)
                return a[0][0];
            long long acc = 0, sign = 1;
            for (int j = 0; j < k; ++j) {
                std::vector<std::vector<long long>> sub;
                for (int i = 1; i < k; ++i) {
                    std::vector<long long> row;
                    for (int c = 0; c < k; ++c)
                        if (c != j)
                            row.push_back(a[i][c]);
                    sub.push_back(row);
                }
                acc += sign * a[0][j] * self(self, sub);
                sign = -sign;
            }
            return acc;
        };
        const long long d = det(det, m);
        if (d != 1 && d != -1)
            throw validation_error(
                "free abelian map is not invertible over the integers");
        // inverse = adjugate / det
        for (int j = 0; j < n; ++j) {
            std::vector<long long> col(n);
            for (int i = 0; i < n; ++i) {
                std::vector<std::vector<long long>> sub;
                for (int r = 0; r < n; ++r) {
                    if (r == j)
                        continue;
                    std::vector<long long> row;
                    for (int c = 0; c < n; ++c)
                        if (c != i)
                            row.push_back(m[r][c]);
                    sub.push_back(row);
                }
                long long cof = n == 1 ? 1 : det(det, sub);
                if ((i + j) % 2 != 0)
                    cof = -cof;
                col[i] = cof * d; // d = 1/d since d is a unit
            }
            inverse_images_.push_back(from_->abelian_element(col));
        }
        return;
    }
    case GroupKind::free_group: {
        const int n = from_->rank();
        std::vector<int> hit(n, 0);
        std::vector<GroupElement> inv(
            static_cast<std::size_t>(n), GroupElement());
        for (int j = 0; j < n; ++j) {
            const auto& nf = images_[j].normal_form();
            if (nf.size() != 2 || (nf[1] != 1 && nf[1] != -1))
                throw validation_error(
                    "free group maps must be signed generator permutations");
            const int target = static_cast<int>(nf[0]);
            if (hit[target]++)
                throw validation_error(
                    "free group maps must be signed generator permutations");
            inv[static_cast<std::size_t>(target)] =
                from_->pow(from_->generator(j), nf[1]);
        }
        inverse_images_ = std::move(inv);
        return;
    }
    case GroupKind::klein_bottle: {
        const auto& ia = images_[0].normal_form(); // (k, delta)
        const auto& ib = images_[1].normal_form(); // (eps, 0)
        const long long k = ia[0], delta = ia[1], eps = ib[0];
        if (ib[1] != 0 || (eps != 1 && eps != -1) ||
            (delta != 1 && delta != -1))
            throw validation_error(
                "klein bottle maps must send a to b^k a^+-1 and b to b^+-1");
        // psi(a) = b^{-eps k} a^{delta}, psi(b) = b^{eps}
        inverse_images_ = {from_->klein_element(-eps * k, delta),
                           from_->klein_element(eps, 0)};
        return;
    }
    case GroupKind::finite: {
        if (!to_ || to_->order() != from_->order())
            throw validation_error("finite groups have different orders");
        // Build the element map by closing the generators; reject any
        // inconsistency along the way.
        std::map<long long, GroupElement> map;
        map[from_->identity().normal_form()[0]] = to_->identity();
        bool grew = true;
        while (grew) {
            grew = false;
            for (auto it = map.begin(); it != map.end(); ++it) {
                GroupElement x = from_->from_normal_form({it->first});
                for (std::size_t gi = 0; gi < images_.size(); ++gi) {
                    GroupElement xg =
                        from_->mul(x, from_->generator(static_cast<int>(gi)));
                    GroupElement img = to_->mul(it->second, images_[gi]);
                    auto found = map.find(xg.normal_form()[0]);
                    if (found == map.end()) {
                        map[xg.normal_form()[0]] = img;
                        grew = true;
                    } else if (!(found->second == img)) {
                        throw validation_error(
                            "generator images do not define a homomorphism");
                    }
                }
            }
        }
        if (map.size() != from_->order())
            throw validation_error(
                "generator list does not generate the group");
        // homomorphism and injectivity, exhaustively
        std::map<std::vector<long long>, long long> seen;
        for (const auto& [idx, img] : map) {
            if (seen.count(img.normal_form()))
                throw validation_error("generator images are not injective");
            seen[img.normal_form()] = idx;
        }
        for (const auto& [xi, xim] : map)
            for (const auto& [yi, yim] : map) {
                GroupElement xy = from_->mul(from_->from_normal_form({xi}),
                                             from_->from_normal_form({yi}));
                if (!(map.at(xy.normal_form()[0]) == to_->mul(xim, yim)))
                    throw validation_error(
                        "generator images do not define a homomorphism");
            }
        element_map_ = std::move(map);
        // invert on the target's generators
        for (const auto& name : to_->generator_names()) {
            GroupElement target = to_->finite_element(name);
            bool found = false;
            for (const auto& [xi, img] : element_map_)
                if (img == target) {
                    inverse_images_.push_back(from_->from_normal_form({xi}));
                    found = true;
                    break;
                }
            if (!found)
                throw validation_error("generator images are not surjective");
        }
        return;
    }
    }
    throw error("unreachable");
}

} // namespace pconn
