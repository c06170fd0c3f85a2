#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "pconn/chain_complex.hpp"
#include "pconn/errors.hpp"
#include "pconn/flow.hpp"
#include "pconn/novikov.hpp"

namespace pconn {

struct CriticalPoint {
    std::string id;
    int index = 0;
};

/// One incidence record of a circle-valued Morse function: the signed
/// count of connecting orbits from the fixed lift of `from` to the
/// level-l translate of the fixed lift of `to`. Lifts are chosen inside
/// one fundamental cobordism, so levels are never negative and the
/// boundary coefficients live in Z[[t]].
struct IncidenceRecord {
    std::string from;
    std::string to;
    long long level = 0;
    Int count = 1;
};

struct CircleMorseData {
    std::vector<CriticalPoint> critical_points;
    std::vector<IncidenceRecord> incidences;

    const CriticalPoint* find(const std::string& id) const
    {
        for (const auto& p : critical_points)
            if (p.id == id)
                return &p;
        return nullptr;
    }

    std::map<int, std::vector<std::string>> by_index() const
    {
        std::map<int, std::vector<std::string>> out;
        for (const auto& p : critical_points)
            out[p.index].push_back(p.id);
        return out;
    }

    void validate() const
    {
        std::map<std::string, int> seen;
        for (const auto& p : critical_points)
            if (seen.emplace(p.id, p.index).second == false)
                throw validation_error("duplicate critical point '" + p.id +
                                       "'");
        for (const auto& r : incidences) {
            auto from = seen.find(r.from);
            auto to = seen.find(r.to);
            if (from == seen.end() || to == seen.end())
                throw validation_error(
                    "incidence references unknown critical point '" +
                    (from == seen.end() ? r.from : r.to) + "'");
            if (from->second != to->second + 1)
                throw validation_error("index mismatch: incidence from '" +
                                       r.from + "' to '" + r.to +
                                       "' must drop the index by exactly 1");
            if (r.level < 0)
                throw validation_error(
                    "incidence level must be nonnegative (lifts are chosen "
                    "in the fundamental cobordism)");
        }
    }

    /// Net signed counts keyed by (from, to, level); repeated records
    /// accumulate, zero totals are dropped.
    std::map<std::tuple<std::string, std::string, long long>, Int>
    net_counts() const
    {
        std::map<std::tuple<std::string, std::string, long long>, Int> out;
        for (const auto& r : incidences) {
            auto key = std::make_tuple(r.from, r.to, r.level);
            out[key] += r.count;
            if (out[key] == 0)
                out.erase(key);
        }
        return out;
    }

    long long max_level() const
    {
        long long top = 0;
        for (const auto& [key, c] : net_counts())
            top = std::max(top, std::get<2>(key));
        return top;
    }
};

/// The incidence series of a consecutive pair: the signed level-l count
/// at exponent l, summed over levels. Lift normalization keeps
/// min_degree >= 0.
inline NovikovSeries novikov_incidence(const CircleMorseData& data,
                                       const std::string& p,
                                       const std::string& q,
                                       long long precision)
{
    const CriticalPoint* cp = data.find(p);
    const CriticalPoint* cq = data.find(q);
    if (!cp || !cq)
        throw validation_error("unknown critical point");
    if (cp->index != cq->index + 1)
        throw validation_error("index mismatch");
    NovikovSeries acc = NovikovSeries::zero(precision);
    for (const auto& [key, c] : data.net_counts()) {
        if (std::get<0>(key) != p || std::get<1>(key) != q)
            continue;
        const long long level = std::get<2>(key);
        if (level < precision)
            acc = acc + NovikovSeries::monomial(level, c, precision - level);
    }
    return acc;
}

/// The chain complex of the circle-valued data over the Novikov ring:
/// free on the critical points per index, boundary by incidence series.
/// The square of the boundary must vanish to precision.
inline ChainComplex<NovikovSeries>
build_novikov_complex(const CircleMorseData& data, long long precision)
{
    data.validate();
    ChainComplex<NovikovSeries> c;
    c.module.generators = data.by_index();
    for (const auto& [k, gens] : c.module.generators) {
        const auto& rows = c.module.at(k - 1);
        if (rows.empty())
            continue;
        RingMatrix<NovikovSeries> b(rows, gens);
        for (const auto& p : gens)
            for (const auto& q : rows)
                b.set(q, p, novikov_incidence(data, p, q, precision));
        c.boundary.emplace(k, std::move(b));
    }
    c.validate_shape();
    if (!verify_boundary_squared(c).ok)
        throw validation_error("inconsistent incidence data");
    return c;
}

/// Real-valued Morse data: plain signed counts between consecutive
/// critical points.
struct MorseData {
    struct Count {
        std::string from;
        std::string to;
        Int count = 1;
    };
    std::vector<CriticalPoint> critical_points;
    std::vector<Count> counts;

    CircleMorseData as_level_zero() const
    {
        CircleMorseData out;
        out.critical_points = critical_points;
        for (const auto& c : counts)
            out.incidences.push_back({c.from, c.to, 0, c.count});
        return out;
    }
};

/// The integer Morse complex of real-valued data.
inline ChainComplex<Int> build_morse_complex(const MorseData& data)
{
    CircleMorseData flat = data.as_level_zero();
    try {
        flat.validate();
    } catch (const validation_error& e) {
        throw validation_error(std::string("inconsistent Morse data: ") +
                               e.what());
    }
    ChainComplex<Int> c;
    c.module.generators = flat.by_index();
    auto net = flat.net_counts();
    for (const auto& [k, gens] : c.module.generators) {
        const auto& rows = c.module.at(k - 1);
        if (rows.empty())
            continue;
        RingMatrix<Int> b(rows, gens);
        for (const auto& [key, count] : net)
            if (std::find(gens.begin(), gens.end(), std::get<0>(key)) !=
                gens.end())
                b.set(std::get<1>(key), std::get<0>(key), count);
        c.boundary.emplace(k, std::move(b));
    }
    if (!verify_boundary_squared(c).ok)
        throw validation_error("inconsistent Morse data");
    return c;
}

/// The finite stages of the Novikov boundary: at level l the boundary is
/// taken over Z[t]/(t^{l+1}), i.e. every exponent above l is discarded.
/// Successive stages are compatible under truncation and, once l passes
/// the deepest record, the entries stop changing.
struct TruncationTower {
    long long top_level = 0;
    std::vector<ChainComplex<NovikovSeries>> levels; ///< index 0..top_level
    long long max_record_level = 0;
    /// Smallest level from which every stage shows the polynomial pattern
    /// of the top stage.
    long long stabilization_level = 0;
    /// False when the top level never reached the deepest record.
    bool stabilized = true;
};

namespace detail {

inline bool same_boundary_polynomials(const ChainComplex<NovikovSeries>& a,
                                      const ChainComplex<NovikovSeries>& b)
{
    if (a.boundary.size() != b.boundary.size())
        return false;
    for (const auto& [k, ma] : a.boundary) {
        auto it = b.boundary.find(k);
        if (it == b.boundary.end())
            return false;
        const auto& mb = it->second;
        if (ma.entries().size() != mb.entries().size())
            return false;
        for (const auto& [key, v] : ma.entries()) {
            const NovikovSeries* w = mb.find_by_index(key.first, key.second);
            if (!w || !v.same_polynomial(*w))
                return false;
        }
    }
    return true;
}

} // namespace detail

inline TruncationTower truncation_tower(const CircleMorseData& data,
                                        long long top_level)
{
    if (top_level < 0)
        throw validation_error("tower level must be nonnegative");
    data.validate();
    TruncationTower tower;
    tower.top_level = top_level;
    tower.max_record_level = data.max_level();
    for (long long l = 0; l <= top_level; ++l) {
        ChainComplex<NovikovSeries> c;
        c.module.generators = data.by_index();
        for (const auto& [k, gens] : c.module.generators) {
            const auto& rows = c.module.at(k - 1);
            if (rows.empty())
                continue;
            RingMatrix<NovikovSeries> b(rows, gens);
            for (const auto& p : gens)
                for (const auto& q : rows)
                    b.set(q, p, novikov_incidence(data, p, q, l + 1));
            c.boundary.emplace(k, std::move(b));
        }
        tower.levels.push_back(std::move(c));
    }
    tower.stabilized = tower.max_record_level <= top_level;
    long long observed = top_level;
    while (observed > 0 &&
           detail::same_boundary_polynomials(tower.levels[static_cast<
                                                std::size_t>(observed - 1)],
                                             tower.levels.back()))
        --observed;
    tower.stabilization_level = observed;
    return tower;
}

struct TowerCompareReport {
    bool ok = true;
    struct Mismatch {
        long long level;
        int degree;
        std::string row;
        std::string col;
    };
    std::vector<Mismatch> mismatches;
};

/// Checks that each tower stage is exactly the full Novikov boundary with
/// the exponents above the stage level discarded: the finite stages
/// recover the boundary in the limit.
inline TowerCompareReport
compare_tower_limit(const TruncationTower& tower,
                    const ChainComplex<NovikovSeries>& complex)
{
    TowerCompareReport report;
    for (long long l = 0; l <= tower.top_level; ++l) {
        const auto& stage = tower.levels[static_cast<std::size_t>(l)];
        for (const auto& [degree, matrix] : complex.boundary) {
            const int k = degree;
            const RingMatrix<NovikovSeries>& full = matrix;
            RingMatrix<NovikovSeries> expected(full.row_ids(),
                                               full.col_ids());
            for (const auto& [key, v] : full.entries())
                expected.set(full.row_ids()[key.first],
                             full.col_ids()[key.second], v.truncated(l + 1));
            auto it = stage.boundary.find(k);
            const RingMatrix<NovikovSeries> empty(full.row_ids(),
                                                  full.col_ids());
            const auto& got = it == stage.boundary.end() ? empty : it->second;
            // compare entry maps on both supports
            auto note = [&](std::size_t r, std::size_t c) {
                report.ok = false;
                report.mismatches.push_back(
                    {l, k, full.row_ids()[r], full.col_ids()[c]});
            };
            for (const auto& [key, v] : expected.entries()) {
                const NovikovSeries* w =
                    got.find_by_index(key.first, key.second);
                if (!w || !(*w == v))
                    note(key.first, key.second);
            }
            for (const auto& [key, w] : got.entries())
                if (!expected.find_by_index(key.first, key.second))
                    note(key.first, key.second);
        }
    }
    return report;
}

/// Views circle-valued data as a Morse decomposition over the infinite
/// cyclic deck group: one singleton Morse set per critical point, one
/// orbit record per net incidence count with label t^level.
inline MorseDecomposition
decomposition_from_circle(const CircleMorseData& data)
{
    data.validate();
    MorseDecomposition d;
    d.group = DeckGroup::infinite_cyclic("t");
    d.regime = Regime::H2;
    d.base_translation = d.group->identity();
    for (const auto& p : data.critical_points) {
        MorseSet s;
        s.id = p.id;
        s.generators[p.index] = {p.id};
        d.sets.push_back(std::move(s));
    }
    for (const auto& [key, count] : data.net_counts()) {
        const auto& [from, to, level] = key;
        d.orbits.push_back(
            {from, from, to, to, d.group->cyclic_element(level), count});
    }
    return d;
}

/// The reverse view: a decomposition over the infinite cyclic group whose
/// labels all have nonnegative exponent is circle-valued Morse data.
inline CircleMorseData
circle_from_decomposition(const MorseDecomposition& d)
{
    if (d.group->kind() != GroupKind::infinite_cyclic)
        throw validation_error(
            "the truncation tower needs an infinite cyclic deck group");
    CircleMorseData out;
    auto table = d.generator_table();
    for (const auto& s : d.sets)
        for (const auto& [k, gens] : s.generators)
            for (const auto& g : gens)
                out.critical_points.push_back({g, k});
    const GroupElement undo = d.group->inverse(d.base_translation);
    for (const auto& r : d.orbits) {
        const long long level =
            d.group->mul(undo, r.label).normal_form()[0];
        if (level < 0)
            throw validation_error(
                "the truncation tower needs lifts normalized to nonnegative "
                "levels");
        out.incidences.push_back({r.from_gen, r.to_gen, level, r.coeff});
    }
    out.validate();
    return out;
}

/// The level-l stack of fundamental cobordisms, unrolled: one copy of
/// every critical point per shift j = 0..l, boundary counts between
/// copies j and j + d taken from the level-d records. The result is the
/// plain integer Morse complex whose boundary matrix is the level-l stage
/// in block form.
inline ChainComplex<Int>
unroll_fundamental_domains(const CircleMorseData& data, long long level)
{
    data.validate();
    ChainComplex<Int> c;
    auto copy_id = [](const std::string& id, long long j) {
        return id + "@" + std::to_string(j);
    };
    for (long long j = 0; j <= level; ++j)
        for (const auto& p : data.critical_points)
            c.module.generators[p.index].push_back(copy_id(p.id, j));
    auto net = data.net_counts();
    for (const auto& [k, gens] : c.module.generators) {
        const auto& rows = c.module.at(k - 1);
        if (rows.empty())
            continue;
        RingMatrix<Int> b(rows, gens);
        for (const auto& [key, count] : net) {
            const auto& [from, to, d] = key;
            if (!data.find(from) || data.find(from)->index != k)
                continue;
            for (long long j = 0; j + d <= level; ++j)
                b.accumulate(copy_id(to, j + d), copy_id(from, j), count);
        }
        c.boundary.emplace(k, std::move(b));
    }
    return c;
}

} // namespace pconn
