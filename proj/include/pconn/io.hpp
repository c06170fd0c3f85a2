#pragma once

#include <fstream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pconn/circle_morse.hpp"
#include "pconn/connection.hpp"
#include "pconn/flow.hpp"
#include "pconn/gain_graph.hpp"

namespace pconn {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------
// primitives
// ---------------------------------------------------------------------

/// Integers serialize as JSON numbers while they fit in 64 bits and as
/// decimal strings beyond that.
inline Json int_to_json(const Int& x)
{
    if (x >= std::numeric_limits<std::int64_t>::min() &&
        x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline Int int_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw schema_error("invalid integer literal '" +
                               j.get<std::string>() + "'");
        }
    }
    throw schema_error("expected an integer (number or decimal string)");
}

inline const Json& get_field(const Json& j, const char* name)
{
    auto it = j.find(name);
    if (it == j.end())
        throw schema_error(std::string("missing field '") + name + "'");
    return *it;
}

inline Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw schema_error("cannot open input file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw schema_error("malformed JSON in '" + path + "': " + e.what());
    }
}

// ---------------------------------------------------------------------
// groups and elements
// ---------------------------------------------------------------------

inline Json group_to_json(const DeckGroup& g)
{
    Json out;
    out["kind"] = to_string(g.kind());
    switch (g.kind()) {
    case GroupKind::finite: {
        out["elements"] = g.element_names();
        Json table = Json::array();
        for (const auto& x : g.elements()) {
            Json row = Json::array();
            for (const auto& y : g.elements())
                row.push_back(g.to_string(g.mul(x, y)));
            table.push_back(row);
        }
        out["table"] = table;
        out["generators"] = g.generator_names();
        break;
    }
    case GroupKind::infinite_cyclic:
        out["generator"] = g.generator_names()[0];
        break;
    case GroupKind::free_abelian:
    case GroupKind::free_group:
        out["rank"] = g.rank();
        out["generators"] = g.generator_names();
        break;
    case GroupKind::klein_bottle:
        out["generators"] = g.generator_names();
        break;
    }
    return out;
}

inline DeckGroupPtr group_from_json(const Json& j)
{
    const GroupKind kind =
        group_kind_from_string(get_field(j, "kind").get<std::string>());
    switch (kind) {
    case GroupKind::finite: {
        auto elements =
            get_field(j, "elements").get<std::vector<std::string>>();
        const auto& rows = get_field(j, "table");
        if (!rows.is_array())
            throw schema_error("finite group table must be an array");
        auto index_of = [&](const std::string& name) {
            for (std::size_t i = 0; i < elements.size(); ++i)
                if (elements[i] == name)
                    return static_cast<int>(i);
            throw schema_error("table entry '" + name +
                               "' is not a listed element");
        };
        std::vector<std::vector<int>> table;
        for (const auto& row : rows) {
            std::vector<int> r;
            for (const auto& cell : row)
                r.push_back(index_of(cell.get<std::string>()));
            table.push_back(std::move(r));
        }
        std::vector<std::string> generators;
        if (j.contains("generators"))
            generators = j["generators"].get<std::vector<std::string>>();
        return DeckGroup::finite(std::move(elements), std::move(table),
                                 std::move(generators));
    }
    case GroupKind::infinite_cyclic:
        return DeckGroup::infinite_cyclic(
            j.contains("generator") ? j["generator"].get<std::string>()
                                    : "t");
    case GroupKind::free_abelian:
    case GroupKind::free_group: {
        const int rank = get_field(j, "rank").get<int>();
        std::vector<std::string> names;
        if (j.contains("generators"))
            names = j["generators"].get<std::vector<std::string>>();
        return kind == GroupKind::free_abelian
                   ? DeckGroup::free_abelian(rank, std::move(names))
                   : DeckGroup::free_group(rank, std::move(names));
    }
    case GroupKind::klein_bottle: {
        std::vector<std::string> names = {"a", "b"};
        if (j.contains("generators"))
            names = j["generators"].get<std::vector<std::string>>();
        if (names.size() != 2)
            throw schema_error("klein_bottle takes exactly two generators");
        return DeckGroup::klein_bottle(names[0], names[1]);
    }
    }
    throw schema_error("unreachable group kind");
}

/// Kind-specific element encodings: a name for finite groups, an exponent
/// for the infinite cyclic group, an exponent vector for free abelian
/// groups, a word like "a b^-1" for free groups and {"b": n, "a": m} for
/// the klein bottle group.
inline Json element_to_json(const GroupElement& x)
{
    const auto& g = *x.group();
    const auto& nf = x.normal_form();
    switch (g.kind()) {
    case GroupKind::finite:
        return g.to_string(x);
    case GroupKind::infinite_cyclic:
        return nf[0];
    case GroupKind::free_abelian:
        return nf;
    case GroupKind::klein_bottle:
        return Json{{"b", nf[0]}, {"a", nf[1]}};
    case GroupKind::free_group:
        return x.is_identity() ? "1" : g.to_string(x);
    }
    throw schema_error("unreachable group kind");
}

inline GroupElement element_from_json(const DeckGroupPtr& g, const Json& j)
{
    switch (g->kind()) {
    case GroupKind::finite:
        return g->finite_element(j.get<std::string>());
    case GroupKind::infinite_cyclic:
        if (j.is_string())
            return g->element_from_word(j.get<std::string>());
        return g->cyclic_element(j.get<long long>());
    case GroupKind::free_abelian:
        if (j.is_string())
            return g->element_from_word(j.get<std::string>());
        return g->abelian_element(j.get<std::vector<long long>>());
    case GroupKind::klein_bottle: {
        if (j.is_string())
            return g->element_from_word(j.get<std::string>());
        const long long b = j.contains("b") ? j["b"].get<long long>() : 0;
        const long long a = j.contains("a") ? j["a"].get<long long>() : 0;
        return g->klein_element(b, a);
    }
    case GroupKind::free_group:
        return g->element_from_word(j.get<std::string>());
    }
    throw schema_error("unreachable group kind");
}

// ---------------------------------------------------------------------
// ring elements
// ---------------------------------------------------------------------

inline Json group_ring_to_json(const GroupRingElem& x)
{
    Json out = Json::array();
    for (const auto& [g, c] : x.terms())
        out.push_back(Json{{"g", element_to_json(g)}, {"coeff", int_to_json(c)}});
    return out;
}

inline GroupRingElem group_ring_from_json(const DeckGroupPtr& g,
                                          const Json& j)
{
    GroupRingElem out(g);
    for (const auto& term : j)
        out.add_term(element_from_json(g, get_field(term, "g")),
                     int_from_json(get_field(term, "coeff")));
    return out;
}

inline Json novikov_to_json(const NovikovSeries& x)
{
    Json coeffs = Json::array();
    for (const auto& c : x.coeffs())
        coeffs.push_back(int_to_json(c));
    return Json{{"min_degree", x.is_zero() ? 0 : x.min_degree()},
                {"coeffs", coeffs}};
}

inline NovikovSeries novikov_from_json(const Json& j, long long precision)
{
    std::vector<Int> coeffs;
    for (const auto& c : get_field(j, "coeffs"))
        coeffs.push_back(int_from_json(c));
    return NovikovSeries::from_coeffs(
        get_field(j, "min_degree").get<long long>(), std::move(coeffs),
        std::max<long long>(precision,
                            static_cast<long long>(coeffs.size())));
}

// ---------------------------------------------------------------------
// documents
// ---------------------------------------------------------------------

enum class InputKind {
    morse_decomposition,
    circle_morse_data,
    morse_data,
    p_connection_matrix,
};

inline InputKind input_kind(const Json& j)
{
    const std::string kind = get_field(j, "kind").get<std::string>();
    const int version = get_field(j, "schema_version").get<int>();
    if (version != kSchemaVersion)
        throw schema_error("unsupported schema_version " +
                           std::to_string(version));
    if (kind == "morse_decomposition")
        return InputKind::morse_decomposition;
    if (kind == "circle_morse_data")
        return InputKind::circle_morse_data;
    if (kind == "morse_data")
        return InputKind::morse_data;
    if (kind == "p_connection_matrix")
        return InputKind::p_connection_matrix;
    throw schema_error("unknown document kind '" + kind + "'");
}

inline GainGraph gain_graph_from_json(const DeckGroupPtr& g, const Json& j)
{
    GainGraph out;
    out.group = g;
    out.vertices = get_field(j, "vertices").get<std::vector<std::string>>();
    for (const auto& e : get_field(j, "edges"))
        out.edges.push_back({get_field(e, "id").get<std::string>(),
                             get_field(e, "from").get<std::string>(),
                             get_field(e, "to").get<std::string>(),
                             element_from_json(g, get_field(e, "label"))});
    out.validate();
    return out;
}

inline std::vector<PathStep> path_from_json(const Json& j)
{
    std::vector<PathStep> out;
    for (const auto& step : j) {
        if (step.is_string()) {
            std::string s = step.get<std::string>();
            if (!s.empty() && s[0] == '~')
                out.push_back({s.substr(1), true});
            else
                out.push_back({s, false});
        } else {
            out.push_back({get_field(step, "edge").get<std::string>(),
                           step.contains("reverse") &&
                               step["reverse"].get<bool>()});
        }
    }
    return out;
}

inline MorseDecomposition decomposition_from_json(const Json& j)
{
    MorseDecomposition d;
    d.group = group_from_json(get_field(j, "group"));
    d.regime = regime_from_string(get_field(j, "regime").get<std::string>());
    d.base_translation = d.group->identity();

    for (const auto& sj : get_field(j, "morse_sets")) {
        MorseSet s;
        s.id = get_field(sj, "id").get<std::string>();
        for (const auto& gj : get_field(sj, "generators"))
            s.generators[get_field(gj, "degree").get<int>()].push_back(
                get_field(gj, "id").get<std::string>());
        if (sj.contains("evenly_covered"))
            s.evenly_covered = sj["evenly_covered"].get<bool>();
        if (sj.contains("index_trivial"))
            s.index_trivial = sj["index_trivial"].get<bool>();
        d.sets.push_back(std::move(s));
    }

    std::optional<GainGraph> graph;
    if (j.contains("gain_graph"))
        graph = gain_graph_from_json(d.group, j["gain_graph"]);

    if (j.contains("orbits"))
        for (const auto& oj : j["orbits"]) {
            OrbitRecord r;
            const auto& from = get_field(oj, "from");
            const auto& to = get_field(oj, "to");
            r.from_set = get_field(from, "set").get<std::string>();
            r.from_gen = get_field(from, "generator").get<std::string>();
            r.to_set = get_field(to, "set").get<std::string>();
            r.to_gen = get_field(to, "generator").get<std::string>();
            if (oj.contains("label")) {
                r.label = element_from_json(d.group, oj["label"]);
            } else if (oj.contains("path")) {
                if (!graph)
                    throw schema_error(
                        "orbit uses a path but no gain_graph is given");
                r.label = lift_path(*graph, path_from_json(oj["path"]));
            } else {
                throw schema_error("orbit needs a label or a path");
            }
            r.coeff = oj.contains("coeff")
                          ? int_from_json(oj["coeff"])
                          : Int(1);
            d.orbits.push_back(std::move(r));
        }

    if (j.contains("order")) {
        std::vector<std::pair<std::string, std::string>> pairs;
        for (const auto& pj : j["order"])
            pairs.emplace_back(pj.at(0).get<std::string>(),
                               pj.at(1).get<std::string>());
        d.declared_order = Poset::from_relations(d.set_ids(), pairs);
    }
    return d;
}

inline Json decomposition_to_json(const MorseDecomposition& d)
{
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "morse_decomposition";
    out["group"] = group_to_json(*d.group);
    out["regime"] = to_string(d.regime);
    Json sets = Json::array();
    for (const auto& s : d.sets) {
        Json gens = Json::array();
        for (const auto& [k, ids] : s.generators)
            for (const auto& id : ids)
                gens.push_back(Json{{"id", id}, {"degree", k}});
        Json sj{{"id", s.id}, {"generators", gens}};
        if (!s.evenly_covered)
            sj["evenly_covered"] = false;
        if (s.index_trivial)
            sj["index_trivial"] = true;
        sets.push_back(sj);
    }
    out["morse_sets"] = sets;
    Json orbits = Json::array();
    for (const auto& r : d.orbits)
        orbits.push_back(Json{
            {"from", Json{{"set", r.from_set}, {"generator", r.from_gen}}},
            {"to", Json{{"set", r.to_set}, {"generator", r.to_gen}}},
            {"label", element_to_json(r.label)},
            {"coeff", int_to_json(r.coeff)}});
    out["orbits"] = orbits;
    return out;
}

inline CircleMorseData circle_from_json(const Json& j)
{
    CircleMorseData d;
    for (const auto& pj : get_field(j, "critical_points"))
        d.critical_points.push_back(
            {get_field(pj, "id").get<std::string>(),
             get_field(pj, "index").get<int>()});
    if (j.contains("incidences"))
        for (const auto& ij : j["incidences"])
            d.incidences.push_back(
                {get_field(ij, "from").get<std::string>(),
                 get_field(ij, "to").get<std::string>(),
                 get_field(ij, "level").get<long long>(),
                 ij.contains("count") ? int_from_json(ij["count"]) : Int(1)});
    d.validate();
    return d;
}

inline MorseData morse_data_from_json(const Json& j)
{
    MorseData d;
    for (const auto& pj : get_field(j, "critical_points"))
        d.critical_points.push_back(
            {get_field(pj, "id").get<std::string>(),
             get_field(pj, "index").get<int>()});
    if (j.contains("counts"))
        for (const auto& cj : j["counts"])
            d.counts.push_back(
                {get_field(cj, "from").get<std::string>(),
                 get_field(cj, "to").get<std::string>(),
                 cj.contains("count") ? int_from_json(cj["count"]) : Int(1)});
    return d;
}

// ---------------------------------------------------------------------
// assembled-matrix artifacts
// ---------------------------------------------------------------------

namespace detail {

inline Json ring_value_to_json(const GroupRingElem& x)
{
    return group_ring_to_json(x);
}
inline Json ring_value_to_json(const NovikovSeries& x)
{
    return novikov_to_json(x);
}

template <class R>
const char* ring_tag();
template <>
inline const char* ring_tag<GroupRingElem>()
{
    return "group_ring";
}
template <>
inline const char* ring_tag<NovikovSeries>()
{
    return "novikov";
}

} // namespace detail

template <class R>
Json artifact_to_json(const PConnectionMatrix<R>& m)
{
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "p_connection_matrix";
    out["ring"] = detail::ring_tag<R>();
    out["group"] = group_to_json(*m.group);
    out["regime"] = to_string(m.regime);
    if (m.precision)
        out["precision"] = *m.precision;

    Json sets = Json::array();
    for (const auto& id : m.order.elements()) {
        Json gens = Json::array();
        auto it = m.set_generators.find(id);
        if (it != m.set_generators.end())
            for (const auto& [k, ids] : it->second)
                for (const auto& gid : ids)
                    gens.push_back(Json{{"id", gid}, {"degree", k}});
        sets.push_back(Json{{"id", id}, {"generators", gens}});
    }
    out["sets"] = sets;

    Json order = Json::array();
    const auto& ids = m.order.elements();
    for (const auto& lo : ids)
        for (const auto& hi : ids)
            if (m.order.less(lo, hi))
                order.push_back(Json::array({lo, hi}));
    out["order"] = order;

    Json blocks = Json::array();
    for (const auto& [pair, b] : m.blocks) {
        Json entries = Json::array();
        for (const auto& [key, v] : b.entries())
            entries.push_back(Json{{"row", b.row_ids()[key.first]},
                                   {"col", b.col_ids()[key.second]},
                                   {"value", detail::ring_value_to_json(v)}});
        blocks.push_back(Json{{"from", pair.first},
                              {"to", pair.second},
                              {"entries", entries}});
    }
    out["blocks"] = blocks;
    return out;
}

namespace detail {

template <class R>
struct RingValueLoader;

template <>
struct RingValueLoader<GroupRingElem> {
    DeckGroupPtr group;
    long long precision;
    GroupRingElem operator()(const Json& j) const
    {
        return group_ring_from_json(group, j);
    }
};

template <>
struct RingValueLoader<NovikovSeries> {
    DeckGroupPtr group;
    long long precision;
    NovikovSeries operator()(const Json& j) const
    {
        return novikov_from_json(j, precision);
    }
};

} // namespace detail

template <class R>
PConnectionMatrix<R> artifact_from_json(const Json& j)
{
    if (input_kind(j) != InputKind::p_connection_matrix)
        throw schema_error("not a p_connection_matrix document");
    if (get_field(j, "ring").get<std::string>() !=
        detail::ring_tag<R>())
        throw schema_error("artifact ring does not match the requested ring");

    PConnectionMatrix<R> m;
    m.group = group_from_json(get_field(j, "group"));
    m.regime = regime_from_string(get_field(j, "regime").get<std::string>());
    if (j.contains("precision"))
        m.precision = j["precision"].get<long long>();

    std::vector<std::string> set_ids;
    for (const auto& sj : get_field(j, "sets")) {
        const std::string id = get_field(sj, "id").get<std::string>();
        set_ids.push_back(id);
        auto& gens = m.set_generators[id];
        for (const auto& gj : get_field(sj, "generators"))
            gens[get_field(gj, "degree").get<int>()].push_back(
                get_field(gj, "id").get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const auto& pj : get_field(j, "order"))
        pairs.emplace_back(pj.at(0).get<std::string>(),
                           pj.at(1).get<std::string>());
    m.order = Poset::from_relations(set_ids, pairs);
    m.set_order = m.order.linear_extension();

    detail::RingValueLoader<R> load{m.group, m.precision.value_or(32)};
    for (const auto& bj : get_field(j, "blocks")) {
        const std::string from = get_field(bj, "from").get<std::string>();
        const std::string to = get_field(bj, "to").get<std::string>();
        if (!m.set_generators.count(from) || !m.set_generators.count(to))
            throw schema_error("block (" + from + ", " + to +
                               ") references a set that is not listed");
        std::vector<std::string> rows, cols;
        for (const auto& [k, ids] : m.set_generators.at(to))
            rows.insert(rows.end(), ids.begin(), ids.end());
        for (const auto& [k, ids] : m.set_generators.at(from))
            cols.insert(cols.end(), ids.begin(), ids.end());
        RingMatrix<R> b(rows, cols);
        for (const auto& ej : get_field(bj, "entries"))
            b.set(get_field(ej, "row").get<std::string>(),
                  get_field(ej, "col").get<std::string>(),
                  load(get_field(ej, "value")));
        m.blocks.emplace(std::make_pair(from, to), std::move(b));
    }
    detail::rebuild_complex(m);
    return m;
}

/// Reference classical matrices: a sparse list of integer entries over the
/// global generator basis.
inline std::map<std::pair<std::string, std::string>, Int>
classical_reference_from_json(const Json& j)
{
    std::map<std::pair<std::string, std::string>, Int> out;
    for (const auto& ej : get_field(j, "entries"))
        out[{get_field(ej, "row").get<std::string>(),
             get_field(ej, "col").get<std::string>()}] =
            int_from_json(get_field(ej, "value"));
    return out;
}

} // namespace pconn
