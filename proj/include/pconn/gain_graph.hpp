#pragma once

#include <map>
#include <string>
#include <vector>

#include "pconn/errors.hpp"
#include "pconn/group.hpp"

namespace pconn {

/// A cell-level gain graph: directed edges labeled by deck-group elements.
/// Orbit labels can be derived by lifting cell paths through it instead of
/// being given directly.
struct GainGraph {
    struct Edge {
        std::string id;
        std::string from;
        std::string to;
        GroupElement label;
    };

    DeckGroupPtr group;
    std::vector<std::string> vertices;
    std::vector<Edge> edges;

    const Edge& edge(const std::string& id) const
    {
        for (const auto& e : edges)
            if (e.id == id)
                return e;
        throw validation_error("unknown gain-graph edge '" + id + "'");
    }

    bool has_vertex(const std::string& id) const
    {
        for (const auto& v : vertices)
            if (v == id)
                return true;
        return false;
    }

    void validate() const
    {
        std::map<std::string, int> ids;
        for (const auto& e : edges) {
            if (ids[e.id]++)
                throw validation_error("duplicate gain-graph edge id '" +
                                       e.id + "'");
            if (!has_vertex(e.from) || !has_vertex(e.to))
                throw validation_error("gain-graph edge '" + e.id +
                                       "' references an unknown vertex");
            group->require_same(e.label);
        }
    }
};

struct PathStep {
    std::string edge;
    bool reverse = false;
};

/// Lifts an edge-consecutive path: the ordered product of edge labels,
/// with reversed traversal contributing the inverse label. The empty path
/// lifts to the identity.
inline GroupElement lift_path(const GainGraph& g,
                              const std::vector<PathStep>& path)
{
    GroupElement acc = g.group->identity();
    bool have_position = false;
    std::string at;
    for (const auto& step : path) {
        const auto& e = g.edge(step.edge);
        const std::string& start = step.reverse ? e.to : e.from;
        const std::string& end = step.reverse ? e.from : e.to;
        if (have_position && at != start)
            throw validation_error("path is not edge-consecutive");
        at = end;
        have_position = true;
        acc = g.group->mul(acc, step.reverse ? g.group->inverse(e.label)
                                             : e.label);
    }
    return acc;
}

} // namespace pconn
