#include <catch2/catch_amalgamated.hpp>

#include "pconn/circle_morse.hpp"
#include "pconn/homology.hpp"
#include "support.hpp"

using namespace pconn;
using namespace testsupport;

namespace {

CircleMorseData torus_circle_data()
{
    CircleMorseData d;
    d.critical_points = {{"h0_1", 0}, {"h1_2", 1}, {"h1_3", 1}, {"h2_4", 2}};
    d.incidences = {
        {"h2_4", "h1_2", 0, 1},
        {"h2_4", "h1_2", 2, -1},
        {"h1_3", "h0_1", 0, 1},
        {"h1_3", "h0_1", 2, -1},
    };
    return d;
}

} // namespace

TEST_CASE("novikov incidence series")
{
    const long long p = 32;

    SECTION("torus pair sums to 1 - t^2")
    {
        auto d = torus_circle_data();
        auto n = novikov_incidence(d, "h2_4", "h1_2", p);
        CHECK(n.min_degree() == 0);
        CHECK(n.coeffs() == std::vector<Int>{1, 0, -1});
    }

    SECTION("no records give zero")
    {
        auto d = torus_circle_data();
        CHECK(novikov_incidence(d, "h2_4", "h1_3", p).is_zero());
    }

    SECTION("unit counts at levels 0..3 sum to 1+t+t^2+t^3")
    {
        CircleMorseData d;
        d.critical_points = {{"p", 1}, {"q", 0}};
        for (long long l = 0; l <= 3; ++l)
            d.incidences.push_back({"p", "q", l, 1});
        auto n = novikov_incidence(d, "p", "q", p);
        CHECK(n.coeffs() == std::vector<Int>{1, 1, 1, 1});
    }

    SECTION("index mismatch is rejected")
    {
        auto d = torus_circle_data();
        CHECK_THROWS_WITH(novikov_incidence(d, "h2_4", "h0_1", p),
                          "index mismatch");
    }
}

TEST_CASE("building the novikov complex")
{
    const long long p = 32;

    SECTION("torus data gives the expected generators and boundaries")
    {
        auto c = build_novikov_complex(torus_circle_data(), p);
        CHECK(c.module.at(0) == std::vector<std::string>{"h0_1"});
        CHECK(c.module.at(1) == std::vector<std::string>{"h1_2", "h1_3"});
        CHECK(c.module.at(2) == std::vector<std::string>{"h2_4"});
        REQUIRE(c.boundary.count(2) == 1);
        REQUIRE(c.boundary.at(2).find("h1_2", "h2_4") != nullptr);
        CHECK(c.boundary.at(2).find("h1_2", "h2_4")->coeffs() ==
              std::vector<Int>{1, 0, -1});
        REQUIRE(c.boundary.at(1).find("h0_1", "h1_3") != nullptr);
        CHECK(c.boundary.at(1).find("h0_1", "h1_3")->coeffs() ==
              std::vector<Int>{1, 0, -1});
        CHECK(c.boundary.at(1).find("h0_1", "h1_2") == nullptr);
    }

    SECTION("no critical points give the zero complex")
    {
        auto c = build_novikov_complex(CircleMorseData{}, p);
        CHECK(c.module.generators.empty());
        CHECK(c.boundary.empty());
    }

    SECTION("torus homology over the Novikov ring vanishes")
    {
        auto c = build_novikov_complex(torus_circle_data(), p);
        auto h = homology_over_novikov(c);
        for (int k = 0; k <= 2; ++k) {
            CHECK(h[k].free_rank == 0);
            CHECK(h[k].divisors.empty());
        }
    }

    SECTION("inconsistent incidence data is rejected")
    {
        CircleMorseData d;
        d.critical_points = {{"r", 2}, {"q", 1}, {"p", 0}};
        d.incidences = {{"r", "q", 0, 1}, {"q", "p", 0, 1}};
        CHECK_THROWS_WITH(build_novikov_complex(d, p),
                          "inconsistent incidence data");
    }
}

TEST_CASE("real-valued Morse complexes")
{
    SECTION("height function on the circle")
    {
        MorseData d;
        d.critical_points = {{"max", 1}, {"min", 0}};
        d.counts = {{"max", "min", 1}, {"max", "min", -1}};
        auto c = build_morse_complex(d);
        auto h = homology_over_Z(c);
        CHECK(h[0].betti == 1);
        CHECK(h[1].betti == 1);
    }

    SECTION("height function on the 2-sphere")
    {
        MorseData d;
        d.critical_points = {{"max", 2}, {"min", 0}};
        auto h = homology_over_Z(build_morse_complex(d));
        CHECK(h[0].betti == 1);
        CHECK(h[2].betti == 1);
    }

    SECTION("torus with four critical points and cancelling counts")
    {
        MorseData d;
        d.critical_points = {{"top", 2}, {"s1", 1}, {"s2", 1}, {"bot", 0}};
        d.counts = {{"top", "s1", 1},  {"top", "s1", -1}, {"top", "s2", 1},
                    {"top", "s2", -1}, {"s1", "bot", 1},  {"s1", "bot", -1},
                    {"s2", "bot", 1},  {"s2", "bot", -1}};
        auto h = homology_over_Z(build_morse_complex(d));
        CHECK(h[0].betti == 1);
        CHECK(h[1].betti == 2);
        CHECK(h[2].betti == 1);
    }

    SECTION("non-vanishing boundary square is rejected")
    {
        MorseData d;
        d.critical_points = {{"r", 2}, {"q", 1}, {"p", 0}};
        d.counts = {{"r", "q", 1}, {"q", "p", 1}};
        CHECK_THROWS_WITH(build_morse_complex(d), "inconsistent Morse data");
    }
}

TEST_CASE("truncation tower")
{
    SECTION("torus tower stabilizes at level 2")
    {
        auto tower = truncation_tower(torus_circle_data(), 3);
        REQUIRE(tower.levels.size() == 4);
        auto entry = [&](long long l) {
            return *tower.levels[static_cast<std::size_t>(l)]
                        .boundary.at(2)
                        .find("h1_2", "h2_4");
        };
        CHECK(entry(0).coeffs() == std::vector<Int>{1});
        CHECK(entry(1).coeffs() == std::vector<Int>{1});
        CHECK(entry(2).coeffs() == std::vector<Int>{1, 0, -1});
        CHECK(entry(3).coeffs() == std::vector<Int>{1, 0, -1});
        CHECK(tower.stabilized);
        CHECK(tower.stabilization_level == 2);
        CHECK(tower.max_record_level == 2);
    }

    SECTION("zero data gives zero stages")
    {
        CircleMorseData d;
        d.critical_points = {{"p", 1}, {"q", 0}};
        auto tower = truncation_tower(d, 2);
        for (const auto& stage : tower.levels)
            for (const auto& [k, b] : stage.boundary)
                CHECK(b.is_zero());
        CHECK(tower.stabilized);
        CHECK(tower.stabilization_level == 0);
    }

    SECTION("a record past the top level flags non-stabilization")
    {
        CircleMorseData d;
        d.critical_points = {{"p", 1}, {"q", 0}};
        d.incidences = {{"p", "q", 5, 1}};
        auto tower = truncation_tower(d, 3);
        for (const auto& stage : tower.levels)
            for (const auto& [k, b] : stage.boundary)
                CHECK(b.is_zero());
        CHECK_FALSE(tower.stabilized);
        CHECK(tower.max_record_level == 5);
    }

    SECTION("stages are coherent under truncation")
    {
        auto tower = truncation_tower(torus_circle_data(), 5);
        for (long long l = 0; l <= 5; ++l)
            for (long long j = 0; j <= l; ++j) {
                const auto& high =
                    tower.levels[static_cast<std::size_t>(l)];
                const auto& low =
                    tower.levels[static_cast<std::size_t>(j)];
                for (const auto& [k, bh] : high.boundary) {
                    const auto& bl = low.boundary.at(k);
                    for (const auto& [key, v] : bh.entries()) {
                        auto cut = v.truncated(j + 1);
                        const NovikovSeries* w =
                            bl.find_by_index(key.first, key.second);
                        if (w)
                            CHECK(*w == cut);
                        else
                            CHECK(cut.is_zero());
                    }
                }
            }
    }
}

TEST_CASE("tower against the full boundary")
{
    SECTION("torus tower matches at every level up to 8")
    {
        auto data = torus_circle_data();
        auto tower = truncation_tower(data, 8);
        auto complex = build_novikov_complex(data, 32);
        auto report = compare_tower_limit(tower, complex);
        CHECK(report.ok);
        CHECK(report.mismatches.empty());
    }

    SECTION("a corrupted stage is located")
    {
        auto data = torus_circle_data();
        auto tower = truncation_tower(data, 3);
        auto complex = build_novikov_complex(data, 32);
        tower.levels[1].boundary.at(2).set(
            "h1_2", "h2_4", NovikovSeries::from_coeffs(0, {1, 1}, 2));
        auto report = compare_tower_limit(tower, complex);
        REQUIRE_FALSE(report.ok);
        CHECK(report.mismatches[0].level == 1);
        CHECK(report.mismatches[0].degree == 2);
        CHECK(report.mismatches[0].row == "h1_2");
        CHECK(report.mismatches[0].col == "h2_4");
    }

    SECTION("empty data passes vacuously")
    {
        CircleMorseData d;
        auto report =
            compare_tower_limit(truncation_tower(d, 3),
                                build_novikov_complex(d, 32));
        CHECK(report.ok);
    }
}

TEST_CASE("unrolled fundamental domains reproduce the truncated boundary")
{
    // one stored record per level must reproduce the full equivariant
    // family: entry (q@i, p@j) of the unrolled complex equals the
    // coefficient of t^{i-j} in the incidence series
    std::mt19937 rng(89);
    std::uniform_int_distribution<int> count(-3, 3);
    std::uniform_int_distribution<int> level(0, 4);
    for (int trial = 0; trial < 20; ++trial) {
        CircleMorseData d;
        d.critical_points = {{"r", 2}, {"p", 1}, {"q", 0}};
        for (int i = 0; i < 6; ++i) {
            d.incidences.push_back({"p", "q", level(rng), count(rng)});
            d.incidences.push_back({"r", "p", level(rng), count(rng)});
        }
        const long long l = 3;
        auto unrolled = unroll_fundamental_domains(d, l);
        for (const auto& [k, b] : unrolled.boundary) {
            for (const auto& from : b.col_ids())
                for (const auto& to : b.row_ids()) {
                    auto split = [](const std::string& id) {
                        auto at = id.rfind('@');
                        return std::make_pair(id.substr(0, at),
                                              std::stoll(id.substr(at + 1)));
                    };
                    auto [fp, fj] = split(from);
                    auto [tp, tj] = split(to);
                    const Int* v = b.find(to, from);
                    const Int got = v ? *v : Int(0);
                    Int expected = 0;
                    if (tj >= fj) {
                        auto series = novikov_incidence(d, fp, tp, 32);
                        expected = series.coeff_at(tj - fj);
                    }
                    CHECK(got == expected);
                }
        }
    }
}

TEST_CASE("level-zero circle data matches the real-valued Morse complex")
{
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> count(-3, 3);
    for (int trial = 0; trial < 20; ++trial) {
        MorseData real;
        real.critical_points = {{"r", 2}, {"p", 1}, {"q", 0}};
        // boundary-squared must vanish: make one map zero
        real.counts = {{"r", "p", 0}, {"p", "q", count(rng)}};
        CircleMorseData circle = real.as_level_zero();

        auto morse = build_morse_complex(real);
        auto novikov = build_novikov_complex(circle, 32);
        for (const auto& [k, b] : morse.boundary) {
            const auto& nb = novikov.boundary.at(k);
            for (const auto& from : b.col_ids())
                for (const auto& to : b.row_ids()) {
                    const Int* v = b.find(to, from);
                    const NovikovSeries* w = nb.find(to, from);
                    if (v) {
                        REQUIRE(w != nullptr);
                        CHECK(w->min_degree() == 0);
                        CHECK(w->coeffs() == std::vector<Int>{*v});
                    } else {
                        CHECK(w == nullptr);
                    }
                }
        }
    }
}
