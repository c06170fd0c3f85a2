#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pconn/errors.hpp"
#include "pconn/group.hpp"
#include "pconn/ints.hpp"
#include "pconn/poset.hpp"

namespace pconn {

/// Coefficient regimes for the covering ring Z((G)):
///   H1 -- G finite, Z((G)) = Z[G]
///   H2 -- G totally ordered with label sets bounded below; the infinite
///         cyclic case is the Novikov ring
///   H3 -- general G under the finite-support hypothesis, Z((G)) = Z[G]
enum class Regime { H1, H2, H3 };

inline std::string to_string(Regime r)
{
    switch (r) {
    case Regime::H1: return "H1";
    case Regime::H2: return "H2";
    case Regime::H3: return "H3";
    }
    return "?";
}

inline Regime regime_from_string(const std::string& s)
{
    if (s == "H1")
        return Regime::H1;
    if (s == "H2")
        return Regime::H2;
    if (s == "H3")
        return Regime::H3;
    throw schema_error("unknown regime '" + s + "'");
}

/// One Morse set: its id and the graded generators of its homology index.
struct MorseSet {
    std::string id;
    std::map<int, std::vector<std::string>> generators;
    bool evenly_covered = true;
    bool index_trivial = false;

    std::size_t generator_count() const
    {
        std::size_t n = 0;
        for (const auto& [k, gens] : generators)
            n += gens.size();
        return n;
    }
};

/// A signed generator-to-generator connecting-orbit record. The record
/// runs from a degree-k generator of the repeller side to a degree-(k-1)
/// generator of the attractor side, carries the deck-transformation label
/// of the lifted orbit and a signed multiplicity.
struct OrbitRecord {
    std::string from_set;
    std::string from_gen;
    std::string to_set;
    std::string to_gen;
    GroupElement label;
    Int coeff = 1;
};

/// The combinatorial model of a Morse decomposition lifted to a regular
/// cover: Morse sets with index generators, labeled orbit records, the
/// deck group and a coefficient regime. `base_translation` records how far
/// the chosen repeller lifts have been translated; assembly divides it
/// back out, which is what makes the assembled matrices independent of
/// the choice.
struct MorseDecomposition {
    DeckGroupPtr group;
    Regime regime = Regime::H3;
    std::vector<MorseSet> sets;
    std::vector<OrbitRecord> orbits;
    std::optional<Poset> declared_order;
    GroupElement base_translation;

    const MorseSet* find_set(const std::string& id) const
    {
        for (const auto& s : sets)
            if (s.id == id)
                return &s;
        return nullptr;
    }

    std::vector<std::string> set_ids() const
    {
        std::vector<std::string> out;
        for (const auto& s : sets)
            out.push_back(s.id);
        return out;
    }

    /// generator id -> (owning set, degree)
    std::map<std::string, std::pair<std::string, int>> generator_table() const
    {
        std::map<std::string, std::pair<std::string, int>> out;
        for (const auto& s : sets)
            for (const auto& [k, gens] : s.generators)
                for (const auto& g : gens)
                    if (!out.emplace(g, std::make_pair(s.id, k)).second)
                        throw validation_error("duplicate generator id '" +
                                               g + "'");
        return out;
    }
};

/// The flow ordering generated by the orbit records: to < from for every
/// record, transitively closed. A cycle means the off-set dynamics cannot
/// be gradient-like.
inline Poset flow_order(const MorseDecomposition& d)
{
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& r : d.orbits)
        pairs.emplace_back(r.to_set, r.from_set);
    try {
        return Poset::from_relations(d.set_ids(), pairs);
    } catch (const validation_error&) {
        throw validation_error("not an admissible decomposition");
    }
}

/// The order the decomposition is assembled against: the declared order
/// when present (it must extend the flow order), the flow order otherwise.
inline Poset admissible_order(const MorseDecomposition& d)
{
    Poset flow = flow_order(d);
    if (!d.declared_order)
        return flow;
    if (!d.declared_order->extends(flow))
        throw validation_error(
            "declared order does not extend the flow ordering");
    return *d.declared_order;
}

/// Partitions the records of the pair (from repeller, to attractor) by
/// deck label: the g-orbit buckets. Buckets of distinct labels are
/// disjoint by construction and their union is every record of the pair.
inline std::map<GroupElement, std::vector<std::size_t>, GroupElementLess>
classify_orbits(const MorseDecomposition& d, const std::string& from,
                const std::string& to)
{
    std::map<GroupElement, std::vector<std::size_t>, GroupElementLess> out;
    for (std::size_t i = 0; i < d.orbits.size(); ++i) {
        const auto& r = d.orbits[i];
        if (r.from_set == from && r.to_set == to)
            out[r.label].push_back(i);
    }
    return out;
}

/// Translates the chosen repeller lifts by h: every label g becomes h g
/// and the translation is recorded so assembly can normalize it away.
inline MorseDecomposition translate_decomposition(const MorseDecomposition& d,
                                                  const GroupElement& h)
{
    d.group->require_same(h);
    MorseDecomposition out = d;
    for (auto& r : out.orbits)
        r.label = d.group->mul(h, r.label);
    out.base_translation = d.group->mul(h, d.base_translation);
    return out;
}

struct RegimeReport {
    bool ok = true;
    Regime regime = Regime::H3;
    std::vector<std::string> violations;
    std::vector<std::string> advisories;
    /// Per pair with records: minimal label in the group order (H2).
    std::vector<std::pair<std::pair<std::string, std::string>, std::string>>
        pair_minima;
};

/// Checks that the declared coefficient regime fits the deck group:
/// H1 needs a finite group, H2 an ordered abelian kind (infinite cyclic or
/// free abelian; finitely many records make every label set bounded
/// below), H3 accepts any kind but flags the finite-support hypothesis.
inline RegimeReport validate_regime(const MorseDecomposition& d)
{
    RegimeReport report;
    report.regime = d.regime;
    const GroupKind kind = d.group->kind();
    switch (d.regime) {
    case Regime::H1:
        if (kind != GroupKind::finite) {
            report.ok = false;
            report.violations.push_back(
                "unsupported coefficient regime for this group: H1 needs a "
                "finite group");
        }
        break;
    case Regime::H2:
        if (kind != GroupKind::infinite_cyclic &&
            kind != GroupKind::free_abelian) {
            report.ok = false;
            report.violations.push_back(
                "unsupported coefficient regime for this group: H2 needs an "
                "ordered abelian group");
        }
        break;
    case Regime::H3:
        report.advisories.push_back(
            "H3 assumes finitely many labels per pair; the record format "
            "keeps this finite by construction");
        break;
    }
    if (!report.ok)
        return report;
    // minimal label per pair, meaningful under the H2 order
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : d.orbits)
        seen.insert({r.from_set, r.to_set});
    for (const auto& pair : seen) {
        auto buckets = classify_orbits(d, pair.first, pair.second);
        if (buckets.empty())
            continue;
        report.pair_minima.push_back(
            {pair, d.group->to_string(buckets.begin()->first)});
    }
    return report;
}

struct DecompositionReport {
    bool ok = true;
    RegimeReport regime;
    std::vector<std::string> violations;
    std::vector<std::string> warnings;
    struct PairReport {
        std::string from;
        std::string to;
        bool adjacent = true;
        /// label rendering -> bucket size
        std::vector<std::pair<std::string, std::size_t>> buckets;
    };
    std::vector<PairReport> pairs;
};

/// Structural validation of a decomposition: well-formed sets and
/// generators, degree-drop-one records, an acyclic orbit relation, a
/// declared order that extends the flow order, and the regime check.
/// Records between non-adjacent sets are legal input but the assembled
/// matrix cannot carry them, so they are surfaced as warnings.
inline DecompositionReport
validate_decomposition(const MorseDecomposition& d)
{
    DecompositionReport report;
    auto fail = [&](const std::string& msg) {
        report.ok = false;
        report.violations.push_back(msg);
    };

    std::set<std::string> ids;
    for (const auto& s : d.sets) {
        if (!ids.insert(s.id).second)
            fail("duplicate Morse set id '" + s.id + "'");
        if (s.generator_count() == 0 && !s.index_trivial)
            fail("Morse set '" + s.id +
                 "' has no index generators and is not declared "
                 "index-trivial");
        if (!s.evenly_covered)
            fail("Morse set '" + s.id + "' is not evenly covered");
    }

    std::map<std::string, std::pair<std::string, int>> gens;
    try {
        gens = d.generator_table();
    } catch (const validation_error& e) {
        fail(e.what());
        return report;
    }

    for (const auto& r : d.orbits) {
        if (!d.find_set(r.from_set) || !d.find_set(r.to_set)) {
            fail("orbit record references unknown Morse set '" +
                 (d.find_set(r.from_set) ? r.to_set : r.from_set) + "'");
            continue;
        }
        if (r.from_set == r.to_set) {
            fail("orbit record connects '" + r.from_set + "' to itself");
            continue;
        }
        auto from = gens.find(r.from_gen);
        auto to = gens.find(r.to_gen);
        if (from == gens.end() || to == gens.end()) {
            fail("orbit record references unknown generator '" +
                 (from == gens.end() ? r.from_gen : r.to_gen) + "'");
            continue;
        }
        if (from->second.first != r.from_set || to->second.first != r.to_set) {
            fail("orbit record generator does not belong to the named set");
            continue;
        }
        if (from->second.second != to->second.second + 1)
            fail("orbit record from '" + r.from_gen + "' to '" + r.to_gen +
                 "' must drop degree by exactly 1");
        if (r.coeff == 0)
            fail("orbit record from '" + r.from_gen + "' to '" + r.to_gen +
                 "' has zero coefficient");
        try {
            d.group->require_same(r.label);
        } catch (const validation_error& e) {
            fail("orbit record from '" + r.from_gen + "' to '" + r.to_gen +
                 "': " + e.what());
        }
    }

    std::optional<Poset> order;
    try {
        order = admissible_order(d);
    } catch (const validation_error& e) {
        fail(e.what());
    }

    report.regime = validate_regime(d);
    if (!report.regime.ok) {
        report.ok = false;
        for (const auto& v : report.regime.violations)
            report.violations.push_back(v);
    }
    for (const auto& a : report.regime.advisories)
        report.warnings.push_back(a);

    // per-pair bucket summary and adjacency
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& r : d.orbits)
        if (d.find_set(r.from_set) && d.find_set(r.to_set))
            seen.insert({r.from_set, r.to_set});
    for (const auto& [from, to] : seen) {
        DecompositionReport::PairReport pr;
        pr.from = from;
        pr.to = to;
        for (const auto& [label, records] : classify_orbits(d, from, to))
            pr.buckets.emplace_back(d.group->to_string(label),
                                    records.size());
        if (order)
            pr.adjacent =
                order->adjacent_elements(order->index_of(from),
                                         order->index_of(to));
        if (!pr.adjacent)
            report.warnings.push_back(
                "records between non-adjacent sets ('" + from + "' -> '" +
                to + "') do not enter the assembled matrix");
        report.pairs.push_back(std::move(pr));
    }
    return report;
}

} // namespace pconn
