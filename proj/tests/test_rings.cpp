#include <catch2/catch_amalgamated.hpp>

#include "pconn/group_ring.hpp"
#include "pconn/novikov.hpp"
#include "support.hpp"

using namespace pconn;
using namespace testsupport;

namespace {

// Independent convolution oracle over a finite table: dense coefficient
// arrays indexed by element position.
GroupRingElem convolve_dense(const GroupRingElem& x, const GroupRingElem& y)
{
    auto g = x.group();
    const auto elems = g->elements();
    std::vector<Int> xs(elems.size(), Int(0)), ys(elems.size(), Int(0)),
        zs(elems.size(), Int(0));
    for (std::size_t i = 0; i < elems.size(); ++i) {
        xs[i] = x.coefficient(elems[i]);
        ys[i] = y.coefficient(elems[i]);
    }
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j) {
            auto prod = g->mul(elems[i], elems[j]);
            for (std::size_t k = 0; k < elems.size(); ++k)
                if (prod == elems[k])
                    zs[k] += xs[i] * ys[j];
        }
    GroupRingElem out(g);
    for (std::size_t k = 0; k < elems.size(); ++k)
        out.add_term(elems[k], zs[k]);
    return out;
}

} // namespace

TEST_CASE("group ring arithmetic on Z2+Z2")
{
    auto g = z2z2();
    auto one = GroupRingElem::one(g);
    auto a = GroupRingElem::monomial(g->finite_element("a"), 1);
    auto x = one + a;
    // (1+a)(1+a) = 2 + 2a since a^2 = e
    auto sq = x * x;
    CHECK(sq == Int(2) * one + Int(2) * a);
    CHECK(sq == convolve_dense(x, x));
    CHECK(sq.to_string() == "2 + 2 a");

    CHECK((GroupRingElem::zero(g) * x).is_zero());
    CHECK(x.augment() == 2);
}

TEST_CASE("group ring axioms hold on random triples, all kinds")
{
    std::mt19937 rng(23);
    for (const auto& g : {z2z2(), klein(), cyclic(), free2(), abelian2()}) {
        for (int i = 0; i < 100; ++i) {
            auto x = random_ring_elem(rng, g);
            auto y = random_ring_elem(rng, g);
            auto z = random_ring_elem(rng, g);
            CHECK((x * y) * z == x * (y * z));
            CHECK(x + y == y + x);
            CHECK(x * (y + z) == x * y + x * z);
            CHECK((x + y) * z == x * z + y * z);
        }
    }
}

TEST_CASE("augmentation is a ring homomorphism")
{
    std::mt19937 rng(29);
    for (const auto& g : {z2z2(), klein(), free2()}) {
        for (int i = 0; i < 60; ++i) {
            auto x = random_ring_elem(rng, g);
            auto y = random_ring_elem(rng, g);
            CHECK(augment(x * y) == augment(x) * augment(y));
            CHECK(augment(x + y) == augment(x) + augment(y));
        }
    }
    auto k = klein();
    auto v = GroupRingElem::one(k) +
             GroupRingElem::monomial(k->generator(1), 1); // 1 + b
    CHECK(augment(v) == 2);
    CHECK(v.to_string() == "1 + b");
}

TEST_CASE("trivial units in the group ring")
{
    auto g = klein();
    auto b = g->generator(1);
    auto u = GroupRingElem::monomial(b, -1);
    REQUIRE(u.is_unit());
    CHECK(u.unit_inverse() * u == GroupRingElem::one(g));
    CHECK_FALSE(GroupRingElem::monomial(b, 2).is_unit());
    CHECK_FALSE((GroupRingElem::one(g) +
                 GroupRingElem::monomial(b, 1)).is_unit());
}

TEST_CASE("ring mismatch is rejected")
{
    auto x = GroupRingElem::one(cyclic());
    auto y = GroupRingElem::one(free2());
    CHECK_THROWS_WITH(x * y, "ring mismatch");
}

TEST_CASE("novikov series basics")
{
    const long long p = 32;
    auto one = NovikovSeries::one(p);
    auto t = NovikovSeries::monomial(1, 1, p);
    auto geom = NovikovSeries::from_coeffs(
        0, std::vector<Int>(static_cast<std::size_t>(p), Int(1)), p);
    // (1 - t)(1 + t + t^2 + ...) = 1 to precision
    CHECK((one - t) * geom == one);
    CHECK((NovikovSeries::zero() * geom).is_zero());

    auto poly = NovikovSeries::from_coeffs(0, {1, 0, -1}, p);
    CHECK(poly.to_string() == "1 - t^2");
    CHECK(poly.min_degree() == 0);
    CHECK(poly.coeffs() == std::vector<Int>{1, 0, -1});

    auto [value, exact] = augment(poly);
    CHECK(value == 0);
    CHECK(exact);
    auto full = geom; // support fills the window
    CHECK_FALSE(augment(full).exact);
    CHECK(augment(NovikovSeries::zero()).value == 0);
}

TEST_CASE("normalization strips cancelled leading terms")
{
    const long long p = 16;
    auto x = NovikovSeries::from_coeffs(-2, {1, 3}, p);
    auto y = NovikovSeries::from_coeffs(-2, {1, 0, 5}, p);
    auto d = y - x; // -3t^-1 + 5
    CHECK(d.min_degree() == -1);
    CHECK(d.coeffs() == std::vector<Int>{-3, 5});
    // precision shrinks by the stripped exponent
    CHECK(d.precision() == p - 1);
}

TEST_CASE("novikov division")
{
    const long long p = 12;
    auto one = NovikovSeries::one(p);
    auto den = NovikovSeries::from_coeffs(0, {1, -1}, p); // 1 - t

    SECTION("unit divisor expands the geometric series")
    {
        auto [q, r] = novikov_divmod(one, den);
        CHECK(r.is_zero());
        for (long long k = 0; k < p; ++k)
            CHECK(q.coeff_at(k) == 1);
        CHECK(q * den + r == one);
    }

    SECTION("head remainder stops the division")
    {
        auto num = NovikovSeries::from_coeffs(0, {2, 1}, p); // 2 + t
        auto three = NovikovSeries::from_coeffs(0, {3}, p);
        auto [q, r] = novikov_divmod(num, three);
        CHECK(q.is_zero());
        CHECK(r == num);
        CHECK(int_abs(r.leading_coeff()) < 3);
    }

    SECTION("x / x = (1, 0)")
    {
        std::mt19937 rng(31);
        for (int i = 0; i < 30; ++i) {
            auto x = random_series(rng, p);
            if (x.is_zero())
                continue;
            auto [q, r] = novikov_divmod(x, x);
            CHECK(q == NovikovSeries::one(p));
            CHECK(r.is_zero());
        }
    }

    SECTION("division by zero")
    {
        CHECK_THROWS_WITH(novikov_divmod(one, NovikovSeries::zero()),
                          "division by zero");
    }

    SECTION("round trip num = q den + r on random pairs")
    {
        std::mt19937 rng(37);
        int done = 0;
        while (done < 200) {
            auto num = random_series(rng, 32);
            auto den = random_series(rng, 32);
            if (den.is_zero())
                continue;
            auto [q, r] = novikov_divmod(num, den);
            CHECK(q * den + r == num);
            if (!r.is_zero())
                CHECK(int_abs(r.leading_coeff()) <
                      int_abs(den.leading_coeff()));
            ++done;
        }
    }
}

TEST_CASE("novikov units invert to precision")
{
    const long long p = 32;
    auto x = NovikovSeries::from_coeffs(0, {1, 0, -1}, p); // 1 - t^2
    REQUIRE(novikov_is_unit(x));
    auto inv = novikov_unit_inverse(x);
    // 1 + t^2 + t^4 + ...
    for (long long k = 0; k < p; ++k)
        CHECK(inv.coeff_at(k) == (k % 2 == 0 ? 1 : 0));
    CHECK(x * inv == NovikovSeries::one(p));

    CHECK_FALSE(novikov_is_unit(NovikovSeries::from_coeffs(0, {2}, p)));
    CHECK_FALSE(novikov_is_unit(NovikovSeries::zero()));

    std::mt19937 rng(41);
    for (int i = 0; i < 100; ++i) {
        auto u = random_unit_series(rng, p);
        CHECK(u * novikov_unit_inverse(u) == NovikovSeries::one(p));
    }
}

TEST_CASE("novikov ring axioms to precision")
{
    std::mt19937 rng(43);
    for (int i = 0; i < 200; ++i) {
        auto x = random_series(rng, 32);
        auto y = random_series(rng, 32);
        auto z = random_series(rng, 32);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("truncation commutes with multiplication")
{
    std::mt19937 rng(47);
    for (int i = 0; i < 100; ++i) {
        auto x = random_series(rng, 32);
        auto y = random_series(rng, 32);
        const long long cut = 6;
        auto both = (x.truncated(cut) * y.truncated(cut)).truncated(cut);
        auto after = (x * y).truncated(cut);
        CHECK(both == after);
    }
}

TEST_CASE("canonical associate form")
{
    auto x = NovikovSeries::from_coeffs(-3, {-2, 1}, 16);
    auto c = canonical_associate(x);
    CHECK(c.min_degree() == 0);
    CHECK(c.leading_coeff() == 2);
    // higher coefficients are reduced into [0, lead)
    for (long long k = 1; k < c.precision(); ++k) {
        CHECK(c.coeff_at(k) >= 0);
        CHECK(c.coeff_at(k) < 2);
    }
    // associates share one representative
    std::mt19937 rng(71);
    for (int i = 0; i < 50; ++i) {
        auto y = random_series(rng, 32);
        if (y.is_zero())
            continue;
        auto u = random_unit_series(rng, 32);
        CHECK(canonical_associate(y) == canonical_associate(y * u));
        CHECK(canonical_associate(y) ==
              canonical_associate(y.shifted(3)));
        CHECK(canonical_associate(y) == canonical_associate(-y));
    }
    // a unit reduces to 1
    auto unit = NovikovSeries::from_coeffs(2, {1, 4, -3}, 16);
    CHECK(canonical_associate(unit) == NovikovSeries::one(14));
}
