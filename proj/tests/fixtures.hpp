#pragma once

// In-memory copies of the example decompositions used across the suites.
// The JSON files under fixtures/ carry the same data; the io tests check
// that both routes agree.

#include "pconn/flow.hpp"
#include "support.hpp"

namespace testsupport {

using namespace pconn;

inline MorseSet simple_set(std::string id, int degree)
{
    MorseSet s;
    s.generators[degree] = {id};
    s.id = std::move(id);
    return s;
}

/// Circle-valued height flow on the torus: one minimum, two saddles, one
/// maximum over the infinite cyclic cover; both nonzero connection entries
/// come out as 1 - t^2.
inline MorseDecomposition torus_decomposition()
{
    MorseDecomposition d;
    d.group = cyclic();
    d.regime = Regime::H2;
    d.base_translation = d.group->identity();
    d.sets = {simple_set("h0_1", 0), simple_set("h1_2", 1),
              simple_set("h1_3", 1), simple_set("h2_4", 2)};
    auto t = [&](long long e) { return d.group->cyclic_element(e); };
    d.orbits = {
        {"h2_4", "h2_4", "h1_2", "h1_2", t(0), 1},
        {"h2_4", "h2_4", "h1_2", "h1_2", t(2), -1},
        {"h1_3", "h1_3", "h0_1", "h0_1", t(0), 1},
        {"h1_3", "h1_3", "h0_1", "h0_1", t(2), -1},
    };
    return d;
}

/// Flow on the Klein bottle with one repeller, two saddles and one sink,
/// lifted to the plane; deck group <a, b | ab = b^-1 a>.
inline MorseDecomposition klein_decomposition()
{
    MorseDecomposition d;
    d.group = klein();
    d.regime = Regime::H3;
    d.base_translation = d.group->identity();
    d.sets = {simple_set("x", 2), simple_set("y1", 1), simple_set("y2", 1),
              simple_set("z", 0)};
    auto e = d.group->identity();
    auto a = d.group->generator(0);
    auto b = d.group->generator(1);
    d.orbits = {
        {"x", "x", "y1", "y1", e, 1},  {"x", "x", "y1", "y1", b, 1},
        {"x", "x", "y2", "y2", e, 1},  {"x", "x", "y2", "y2", a, 1},
        {"y1", "y1", "z", "z", b, 1},  {"y1", "y1", "z", "z", a, 1},
        {"y2", "y2", "z", "z", e, 1},  {"y2", "y2", "z", "z", b, 1},
    };
    return d;
}

/// Flow on the double torus with a repeller, a saddle and an attracting
/// periodic orbit, lifted to the 4-leaf genus-5 cover; deck group Z2+Z2.
/// The periodic orbit carries index generators in degrees 0 and 1.
inline MorseDecomposition double_torus_decomposition()
{
    MorseDecomposition d;
    d.group = z2z2();
    d.regime = Regime::H1;
    d.base_translation = d.group->identity();
    MorseSet gamma;
    gamma.id = "gamma";
    gamma.generators[0] = {"gamma_r0"};
    gamma.generators[1] = {"gamma_r1"};
    d.sets = {simple_set("x", 2), simple_set("y", 1), gamma};
    auto a = d.group->finite_element("a");
    auto ab = d.group->finite_element("ab");
    auto e = d.group->identity();
    d.orbits = {
        {"x", "x", "y", "y", e, 1},
        {"x", "x", "y", "y", a, 1},
        {"y", "y", "gamma", "gamma_r0", a, 1},
        {"y", "y", "gamma", "gamma_r0", ab, 1},
    };
    return d;
}

/// Two consecutive rest points on the solid double torus, universal cover
/// the free group of rank 2; one orbit per deck element, truncated to a
/// finite sample under the finite-support regime.
inline MorseDecomposition solid_double_torus_decomposition()
{
    MorseDecomposition d;
    d.group = free2();
    d.regime = Regime::H3;
    d.base_translation = d.group->identity();
    d.sets = {simple_set("p", 1), simple_set("q", 0)};
    auto w = [&](const std::string& word) {
        return d.group->element_from_word(word);
    };
    d.orbits = {
        {"p", "p", "q", "q", w(""), 1},
        {"p", "p", "q", "q", w("a"), 1},
        {"p", "p", "q", "q", w("b"), 1},
        {"p", "p", "q", "q", w("a^-1"), 1},
        {"p", "p", "q", "q", w("b^-1"), 1},
        {"p", "p", "q", "q", w("a b"), 1},
    };
    return d;
}

} // namespace testsupport
