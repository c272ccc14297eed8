#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "cpf/errors.hpp"
#include "cpf/graph.hpp"

namespace cpf {

using ColorId = int;

// A graph with a total edge coloring. Colors are arbitrary non-negative ints;
// a "color class" is the set of edges sharing one color.
struct EdgeColoredGraph {
    Graph graph;
    std::vector<ColorId> colors;  // aligned with graph.edges()

    ColorId color_of(EdgeId e) const { return colors[graph.edge_index(e)]; }
};

inline EdgeColoredGraph edge_colored(Graph g, std::vector<ColorId> colors) {
    if (colors.size() != g.edge_count())
        throw InputError("edge coloring must cover every edge exactly once");
    for (ColorId c : colors)
        if (c < 0) throw InputError("color ids must be non-negative");
    return {std::move(g), std::move(colors)};
}

inline void validate_edge_colored(const EdgeColoredGraph& g) {
    validate_graph(g.graph);
    if (g.colors.size() != g.graph.edge_count())
        throw InputError("edge coloring must cover every edge exactly once");
    for (ColorId c : g.colors)
        if (c < 0) throw InputError("color ids must be non-negative");
}

// Color classes as (color, edges) pairs, ascending by color.
inline std::vector<std::pair<ColorId, std::vector<EdgeId>>> color_classes(
    const EdgeColoredGraph& g) {
    std::map<ColorId, std::vector<EdgeId>> by_color;
    for (EdgeId e : g.graph.edges()) by_color[g.color_of(e)].push_back(e);
    return {by_color.begin(), by_color.end()};
}

// Number of distinct colors among the edges at v.
inline std::size_t chromatic_degree(const EdgeColoredGraph& g, VertexId v) {
    std::set<ColorId> seen;
    for (EdgeId e : g.graph.incident(v)) seen.insert(g.color_of(e));
    return seen.size();
}

// Per-vertex allowed-transition graphs: T(v) is a graph whose vertices are
// the edge ids incident to v and whose edges are the allowed consecutive
// pairs. |T| below is the total number of allowed pairs over all vertices.
struct TransitionSystem {
    std::vector<Graph> local;  // aligned with the parent's vertices()

    const Graph& at(const Graph& parent, VertexId v) const {
        return local[parent.vertex_index(v)];
    }
    bool allows(const Graph& parent, VertexId v, EdgeId e, EdgeId f) const {
        const Graph& t = at(parent, v);
        return t.has_vertex(e) && t.has_vertex(f) && t.find_edge(e, f).has_value();
    }
    std::size_t size() const {
        std::size_t total = 0;
        for (const Graph& t : local) total += t.edge_count();
        return total;
    }
};

inline void validate_transition_system(const Graph& g, const TransitionSystem& t) {
    if (t.local.size() != g.vertex_count())
        throw InputError("transition system must define T(v) for every vertex");
    for (std::size_t i = 0; i < t.local.size(); ++i) {
        if (t.local[i].vertices() != g.incident(g.vertex_at(i)))
            throw InputError("T(v) must have exactly the edges incident to v as its vertices");
    }
}

// Build from explicit (vertex, edge, edge) allowed triples.
inline TransitionSystem transition_system(
    const Graph& g, const std::vector<std::tuple<VertexId, EdgeId, EdgeId>>& allowed) {
    std::vector<std::vector<std::pair<EdgeId, EdgeId>>> per(g.vertex_count());
    for (auto [v, e, f] : allowed) {
        if (!g.is_endpoint(e, v) || !g.is_endpoint(f, v))
            throw InputError("transition names an edge not incident to its vertex");
        if (e == f) throw InputError("transition must join two distinct edges");
        per[g.vertex_index(v)].push_back(std::minmax(e, f));
    }
    TransitionSystem t;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        auto& pairs = per[i];
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        GraphBuilder b;
        for (EdgeId e : g.incident(g.vertex_at(i))) b.add_vertex(e);
        EdgeId next = 0;
        for (auto [e, f] : pairs) b.add_edge(next++, e, f);
        t.local.push_back(b.build());
    }
    return t;
}

// Every transition allowed: T(v) complete on the incident edges.
inline TransitionSystem full_transition_system(const Graph& g) {
    TransitionSystem t;
    for (VertexId v : g.vertices()) {
        auto inc = g.incident(v);
        GraphBuilder b;
        for (EdgeId e : inc) b.add_vertex(e);
        EdgeId next = 0;
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j) b.add_edge(next++, inc[i], inc[j]);
        t.local.push_back(b.build());
    }
    return t;
}

// The transition system induced by an edge coloring: two incident edges may
// be consecutive iff their colors differ, so each T(v) is complete
// multipartite with the color groups as parts. Properly colored trails are
// exactly the trails compatible with this system.
inline TransitionSystem induced_transition_system(const EdgeColoredGraph& g) {
    TransitionSystem t;
    for (VertexId v : g.graph.vertices()) {
        auto inc = g.graph.incident(v);
        GraphBuilder b;
        for (EdgeId e : inc) b.add_vertex(e);
        EdgeId next = 0;
        for (std::size_t i = 0; i < inc.size(); ++i)
            for (std::size_t j = i + 1; j < inc.size(); ++j)
                if (g.color_of(inc[i]) != g.color_of(inc[j])) b.add_edge(next++, inc[i], inc[j]);
        t.local.push_back(b.build());
    }
    return t;
}

// Two-sided edge labels: each edge is R or B separately at each endpoint,
// partitioning every ∂(u) into R_u and B_u. A walk is compatible when
// consecutive edges sit on different sides of their shared vertex. Parallel
// edges are allowed when they differ in side label somewhere.
enum class Side : unsigned char { R, B };

inline char to_char(Side s) { return s == Side::R ? 'R' : 'B'; }

struct LocallyTwoColoredGraph {
    Graph graph;                               // typically built with allow_parallel
    std::vector<std::pair<Side, Side>> sides;  // by edge index, aligned with endpoints(e)

    Side side_at(EdgeId e, VertexId v) const {
        auto [x, y] = graph.endpoints(e);
        auto [sx, sy] = sides[graph.edge_index(e)];
        if (v == x) return sx;
        if (v == y) return sy;
        throw InputError("vertex " + std::to_string(v) + " is not an endpoint of edge " +
                         std::to_string(e));
    }
};

inline void validate_local2(const LocallyTwoColoredGraph& l) {
    validate_graph(l.graph);
    if (l.sides.size() != l.graph.edge_count())
        throw InputError("side labels must cover every edge exactly once");
    // Parallel edges must differ in side label at some shared endpoint.
    std::map<std::pair<VertexId, VertexId>, std::vector<std::pair<Side, Side>>> groups;
    for (EdgeId e : l.graph.edges()) {
        auto [x, y] = l.graph.endpoints(e);
        std::pair<VertexId, VertexId> key = std::minmax(x, y);
        Side sx = l.side_at(e, key.first), sy = l.side_at(e, key.second);
        auto& seen = groups[key];
        for (auto [ox, oy] : seen)
            if (ox == sx && oy == sy)
                throw InputError("parallel edges with identical side labels at both endpoints");
        seen.push_back({sx, sy});
    }
}

inline LocallyTwoColoredGraph locally_two_colored(Graph g,
                                                  std::vector<std::pair<Side, Side>> sides) {
    LocallyTwoColoredGraph l{std::move(g), std::move(sides)};
    validate_local2(l);
    return l;
}

}  // namespace cpf
