#pragma once

// Shared helpers for the test suites: canonical groups, random elements
// and ring values with a fixed-seed generator.

#include <random>
#include <string>
#include <vector>

#include "pconn/group.hpp"
#include "pconn/group_ring.hpp"
#include "pconn/novikov.hpp"

namespace testsupport {

using namespace pconn;

inline DeckGroupPtr z2z2()
{
    // {e, a, b, ab} with a^2 = b^2 = e, ab = ba
    return DeckGroup::finite(
        {"e", "a", "b", "ab"},
        {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}},
        {"a", "b"});
}

inline DeckGroupPtr klein() { return DeckGroup::klein_bottle("a", "b"); }
inline DeckGroupPtr cyclic() { return DeckGroup::infinite_cyclic("t"); }
inline DeckGroupPtr free2() { return DeckGroup::free_group(2, {"a", "b"}); }
inline DeckGroupPtr abelian2()
{
    return DeckGroup::free_abelian(2, {"a", "b"});
}

inline GroupElement random_element(std::mt19937& rng, const DeckGroupPtr& g)
{
    std::uniform_int_distribution<long long> small(-4, 4);
    switch (g->kind()) {
    case GroupKind::finite: {
        std::uniform_int_distribution<std::size_t> pick(0, g->order() - 1);
        return g->elements()[pick(rng)];
    }
    case GroupKind::infinite_cyclic:
        return g->cyclic_element(small(rng));
    case GroupKind::free_abelian: {
        std::vector<long long> e(static_cast<std::size_t>(g->rank()));
        for (auto& v : e)
            v = small(rng);
        return g->abelian_element(e);
    }
    case GroupKind::klein_bottle:
        return g->klein_element(small(rng), small(rng));
    case GroupKind::free_group: {
        std::uniform_int_distribution<int> len(0, 6);
        std::uniform_int_distribution<int> gen(0, g->rank() - 1);
        std::uniform_int_distribution<int> sgn(0, 1);
        GroupElement acc = g->identity();
        const int n = len(rng);
        for (int i = 0; i < n; ++i)
            acc = g->mul(acc,
                         g->pow(g->generator(gen(rng)), sgn(rng) ? 1 : -1));
        return acc;
    }
    }
    return g->identity();
}

inline GroupRingElem random_ring_elem(std::mt19937& rng, const DeckGroupPtr& g)
{
    std::uniform_int_distribution<int> nterms(0, 4);
    std::uniform_int_distribution<int> coeff(-5, 5);
    GroupRingElem out(g);
    const int n = nterms(rng);
    for (int i = 0; i < n; ++i)
        out.add_term(random_element(rng, g), coeff(rng));
    return out;
}

inline NovikovSeries random_series(std::mt19937& rng, long long precision)
{
    std::uniform_int_distribution<long long> md(-3, 3);
    std::uniform_int_distribution<int> len(0, 8);
    std::uniform_int_distribution<int> coeff(-5, 5);
    const int n = len(rng);
    std::vector<Int> coeffs;
    for (int i = 0; i < n; ++i)
        coeffs.push_back(coeff(rng));
    return NovikovSeries::from_coeffs(md(rng), std::move(coeffs), precision);
}

inline NovikovSeries random_unit_series(std::mt19937& rng,
                                        long long precision)
{
    std::uniform_int_distribution<long long> md(-3, 3);
    std::uniform_int_distribution<int> len(1, 8);
    std::uniform_int_distribution<int> coeff(-5, 5);
    std::uniform_int_distribution<int> sgn(0, 1);
    std::vector<Int> coeffs;
    coeffs.push_back(sgn(rng) ? 1 : -1);
    const int n = len(rng);
    for (int i = 1; i < n; ++i)
        coeffs.push_back(coeff(rng));
    return NovikovSeries::from_coeffs(md(rng), std::move(coeffs), precision);
}

} // namespace testsupport
