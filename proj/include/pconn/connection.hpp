#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "pconn/chain_complex.hpp"
#include "pconn/flow.hpp"
#include "pconn/group_iso.hpp"
#include "pconn/matrix.hpp"

namespace pconn {

/// Coefficient embedding of labeled integer counts into Z[G].
struct GroupRingCoefficients {
    using Ring = GroupRingElem;
    Ring monomial(const GroupElement& g, const Int& c) const
    {
        return GroupRingElem::monomial(g, c);
    }
};

/// Coefficient embedding into the Novikov ring; the deck group must be
/// infinite cyclic, labels t^n map to monomials at exponent n.
struct NovikovCoefficients {
    long long precision = 32;
    using Ring = NovikovSeries;
    Ring monomial(const GroupElement& g, const Int& c) const
    {
        return NovikovSeries::monomial(g.normal_form()[0], c, precision);
    }
};

/// The per-lift family of connection data for one pair (repeller ->
/// attractor): one integer matrix per deck label, plus the records backing
/// each entry. Labels are already normalized by the recorded base-lift
/// translation, so two decompositions differing by a translation build the
/// same bundle.
struct ConnectionBundle {
    std::string from; ///< repeller side
    std::string to;   ///< attractor side
    std::map<GroupElement, RingMatrix<Int>, GroupElementLess> per_label;
    /// (row gen, col gen) -> indices of the records contributing there
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>>
        witnesses;
};

inline ConnectionBundle build_bundle(const MorseDecomposition& d,
                                     const std::string& from,
                                     const std::string& to)
{
    const MorseSet* from_set = d.find_set(from);
    const MorseSet* to_set = d.find_set(to);
    if (!from_set || !to_set)
        throw validation_error("unknown Morse set in pair (" + from + ", " +
                               to + ")");
    std::vector<std::string> rows, cols;
    for (const auto& [k, gens] : to_set->generators)
        rows.insert(rows.end(), gens.begin(), gens.end());
    for (const auto& [k, gens] : from_set->generators)
        cols.insert(cols.end(), gens.begin(), gens.end());

    ConnectionBundle bundle;
    bundle.from = from;
    bundle.to = to;
    const GroupElement undo = d.group->inverse(d.base_translation);
    for (std::size_t i = 0; i < d.orbits.size(); ++i) {
        const auto& r = d.orbits[i];
        if (r.from_set != from || r.to_set != to)
            continue;
        const GroupElement label = d.group->mul(undo, r.label);
        auto [it, inserted] = bundle.per_label.try_emplace(
            label, RingMatrix<Int>(rows, cols));
        it->second.accumulate(r.to_gen, r.from_gen, r.coeff);
        bundle.witnesses[{r.to_gen, r.from_gen}].push_back(i);
    }
    for (auto it = bundle.per_label.begin(); it != bundle.per_label.end();)
        it = it->second.is_zero() ? bundle.per_label.erase(it) : ++it;
    return bundle;
}

/// The connection entry of one pair over the covering ring: the sum over
/// labels g of g times the per-lift count matrix.
template <class Coeff>
RingMatrix<typename Coeff::Ring>
assemble_delta(const MorseDecomposition& d, const std::string& from,
               const std::string& to, const Coeff& coeff)
{
    auto bundle = build_bundle(d, from, to);
    const MorseSet* from_set = d.find_set(from);
    const MorseSet* to_set = d.find_set(to);
    std::vector<std::string> rows, cols;
    for (const auto& [k, gens] : to_set->generators)
        rows.insert(rows.end(), gens.begin(), gens.end());
    for (const auto& [k, gens] : from_set->generators)
        cols.insert(cols.end(), gens.begin(), gens.end());
    RingMatrix<typename Coeff::Ring> out(rows, cols);
    for (const auto& [label, counts] : bundle.per_label)
        for (const auto& [key, c] : counts.entries())
            out.accumulate(counts.row_ids()[key.first],
                           counts.col_ids()[key.second],
                           coeff.monomial(label, c));
    return out;
}

/// The assembled connection matrix of a whole decomposition: the block
/// matrix over the covering ring with one block per adjacent pair carrying
/// records, together with the underlying chain complex on the sum of the
/// index modules. Each index module is embedded with unit coefficient on
/// the recorded generators, so all blocks are written in that basis.
template <class R>
struct PConnectionMatrix {
    using Ring = R;

    DeckGroupPtr group;
    Regime regime = Regime::H3;
    std::optional<long long> precision; ///< set for Novikov coefficients
    Poset order;                        ///< admissible order on the sets
    std::vector<std::string> set_order; ///< linear extension, minimal first
    std::map<std::string, std::map<int, std::vector<std::string>>>
        set_generators;
    GradedModule module; ///< global basis, ordered by degree then set
    std::map<std::pair<std::string, std::string>, RingMatrix<R>> blocks;
    ChainComplex<R> complex;
    /// pair -> (row gen, col gen) -> contributing record indices; empty
    /// for matrices reloaded from a serialized artifact
    std::map<std::pair<std::string, std::string>,
             std::map<std::pair<std::string, std::string>,
                      std::vector<std::size_t>>>
        witnesses;
    /// records between non-adjacent sets, excluded from the blocks
    std::vector<std::size_t> skipped_records;

    friend bool operator==(const PConnectionMatrix& x,
                           const PConnectionMatrix& y)
    {
        const bool group_eq =
            x.group == y.group ||
            (x.group && y.group && x.group->structurally_equal(*y.group));
        return group_eq && x.regime == y.regime &&
               x.precision == y.precision && x.order == y.order &&
               x.set_order == y.set_order &&
               x.set_generators == y.set_generators &&
               x.module == y.module && x.blocks == y.blocks &&
               x.complex == y.complex;
    }
};

namespace detail {

template <class R>
void rebuild_complex(PConnectionMatrix<R>& m)
{
    m.module.generators.clear();
    std::map<int, std::vector<std::string>> by_degree;
    for (const auto& set_id : m.set_order) {
        auto it = m.set_generators.find(set_id);
        if (it == m.set_generators.end())
            continue;
        for (const auto& [k, gens] : it->second)
            by_degree[k].insert(by_degree[k].end(), gens.begin(), gens.end());
    }
    m.module.generators = std::move(by_degree);
    m.module.validate();

    m.complex.module = m.module;
    m.complex.boundary.clear();
    std::map<std::string, int> degree_of;
    for (const auto& [k, gens] : m.module.generators)
        for (const auto& g : gens)
            degree_of[g] = k;
    for (const auto& [k, gens] : m.module.generators) {
        if (m.module.at(k - 1).empty())
            continue;
        m.complex.boundary.emplace(
            k, RingMatrix<R>(m.module.at(k - 1), m.module.at(k)));
    }
    for (const auto& [pair, block] : m.blocks)
        for (const auto& [key, v] : block.entries()) {
            const std::string& row = block.row_ids()[key.first];
            const std::string& col = block.col_ids()[key.second];
            const int k = degree_of.at(col);
            m.complex.boundary.at(k).accumulate(row, col, v);
        }
}

} // namespace detail

template <class Coeff>
PConnectionMatrix<typename Coeff::Ring>
assemble_ndelta(const MorseDecomposition& d, const Coeff& coeff)
{
    auto report = validate_decomposition(d);
    if (!report.ok)
        throw validation_error(report.violations.front());

    PConnectionMatrix<typename Coeff::Ring> m;
    m.group = d.group;
    m.regime = d.regime;
    if constexpr (std::is_same_v<Coeff, NovikovCoefficients>)
        m.precision = coeff.precision;
    m.order = admissible_order(d);
    m.set_order = m.order.linear_extension();
    for (const auto& s : d.sets)
        m.set_generators[s.id] = s.generators;

    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& r : d.orbits)
        pairs.insert({r.from_set, r.to_set});
    for (const auto& [from, to] : pairs) {
        if (!m.order.adjacent_elements(m.order.index_of(from),
                                       m.order.index_of(to))) {
            for (std::size_t i = 0; i < d.orbits.size(); ++i)
                if (d.orbits[i].from_set == from && d.orbits[i].to_set == to)
                    m.skipped_records.push_back(i);
            continue;
        }
        // records force to <_f from; the admissible order extends that
        if (!m.order.less(to, from))
            throw validation_error("connection entry (" + from + ", " + to +
                                   ") is not strictly below the diagonal");
        auto block = assemble_delta(d, from, to, coeff);
        if (block.is_zero())
            continue;
        auto bundle = build_bundle(d, from, to);
        m.witnesses[{from, to}] = std::move(bundle.witnesses);
        m.blocks.emplace(std::make_pair(from, to), std::move(block));
    }
    detail::rebuild_complex(m);
    return m;
}

inline std::pair<Int, bool> project_entry(const GroupRingElem& x)
{
    return {x.augment(), true};
}
inline std::pair<Int, bool> project_entry(const NovikovSeries& x)
{
    auto a = augment(x);
    return {a.value, a.exact};
}

/// The classical connection-matrix candidate: every coefficient collapsed
/// along g -> 1. `square_commutes` checks that projecting the composite
/// boundary equals composing the projected boundaries.
struct ClassicalProjection {
    ChainComplex<Int> complex;
    std::map<std::pair<std::string, std::string>, RingMatrix<Int>> blocks;
    bool exact = true;
    bool square_commutes = true;
};

template <class R>
ClassicalProjection project_classical(const PConnectionMatrix<R>& m)
{
    ClassicalProjection out;
    out.complex.module = m.module;
    for (const auto& [k, b] : m.complex.boundary) {
        RingMatrix<Int> pb(b.row_ids(), b.col_ids());
        for (const auto& [key, v] : b.entries()) {
            auto [value, exact] = project_entry(v);
            out.exact = out.exact && exact;
            pb.set(b.row_ids()[key.first], b.col_ids()[key.second], value);
        }
        out.complex.boundary.emplace(k, std::move(pb));
    }
    for (const auto& [pair, b] : m.blocks) {
        RingMatrix<Int> pb(b.row_ids(), b.col_ids());
        for (const auto& [key, v] : b.entries()) {
            auto [value, exact] = project_entry(v);
            out.exact = out.exact && exact;
            pb.set(b.row_ids()[key.first], b.col_ids()[key.second], value);
        }
        out.blocks.emplace(pair, std::move(pb));
    }
    // projection of the composite vs composite of the projections
    for (const auto& [k, b] : m.complex.boundary) {
        auto next = m.complex.boundary.find(k + 1);
        if (next == m.complex.boundary.end())
            continue;
        RingMatrix<R> sq = compose(b, next->second);
        RingMatrix<Int> projected_sq(sq.row_ids(), sq.col_ids());
        for (const auto& [key, v] : sq.entries())
            projected_sq.set(sq.row_ids()[key.first],
                             sq.col_ids()[key.second],
                             project_entry(v).first);
        auto composed = compose(out.complex.boundary.at(k),
                                out.complex.boundary.at(k + 1));
        if (!(projected_sq == composed))
            out.square_commutes = false;
    }
    return out;
}

struct EntryWitness {
    std::string row;
    std::string col;
    std::vector<std::size_t> records;
};

/// For each nonzero entry of the pair's block, the orbit records that
/// produced it. A nonzero entry without a witness would be an assembly
/// bug, so it is a hard error.
template <class R>
std::vector<EntryWitness>
nonzero_entry_certificate(const PConnectionMatrix<R>& m,
                          const std::string& from, const std::string& to)
{
    std::vector<EntryWitness> out;
    auto block = m.blocks.find({from, to});
    if (block == m.blocks.end())
        return out;
    auto wit = m.witnesses.find({from, to});
    if (wit == m.witnesses.end())
        throw validation_error(
            "no witness data: the matrix was not assembled from records");
    for (const auto& [key, v] : block->second.entries()) {
        EntryWitness w;
        w.row = block->second.row_ids()[key.first];
        w.col = block->second.col_ids()[key.second];
        auto records = wit->second.find({w.row, w.col});
        if (records == wit->second.end() || records->second.empty())
            throw error("assembly bug: nonzero entry (" + w.row + ", " +
                        w.col + ") has no witness record");
        w.records = records->second;
        out.push_back(std::move(w));
    }
    return out;
}

namespace detail {

inline GroupRingElem transport_entry(const GroupRingElem& x,
                                     const GroupIso& iso, long long)
{
    return x.map_terms(iso);
}

inline NovikovSeries transport_entry(const NovikovSeries& x,
                                     const GroupIso& iso, long long precision)
{
    // the iso sends t to t^e with e = +-1
    const long long e = iso.apply(iso.from()->cyclic_element(1))
                            .normal_form()[0];
    if (e == 1)
        return x;
    if (x.is_zero())
        return x;
    if (!x.is_polynomial_within_precision())
        throw precision_error(
            "cannot transport a series that is not a finite polynomial "
            "within precision");
    std::vector<Int> rev(x.coeffs().rbegin(), x.coeffs().rend());
    return NovikovSeries::from_coeffs(-(x.support_end() - 1), std::move(rev),
                                      std::max(precision, x.precision()));
}

} // namespace detail

/// Transports the matrix along an isomorphism of deck groups (equivalent
/// coverings): every coefficient is mapped by the induced ring
/// isomorphism. Composing with the inverse transport gives back the
/// original matrix.
template <class R>
PConnectionMatrix<R> transport_by_isomorphism(const PConnectionMatrix<R>& m,
                                              const GroupIso& iso)
{
    if (!m.group || !iso.from()->structurally_equal(*m.group))
        throw validation_error(
            "isomorphism domain does not match the matrix group");
    PConnectionMatrix<R> out = m;
    out.group = iso.to();
    const long long precision = m.precision.value_or(32);
    for (auto& [pair, block] : out.blocks) {
        RingMatrix<R> mapped(block.row_ids(), block.col_ids());
        for (const auto& [key, v] : block.entries())
            mapped.set(block.row_ids()[key.first],
                       block.col_ids()[key.second],
                       detail::transport_entry(v, iso, precision));
        block = std::move(mapped);
    }
    detail::rebuild_complex(out);
    return out;
}

} // namespace pconn
