#pragma once

// "Structure from acyclicity" extractors. Each operation first verifies its
// hypotheses — throwing PreconditionError naming the failing clause — and then
// produces the object whose existence the hypotheses guarantee: a matching
// bridge, a color-separating vertex, a bridge located through the line-graph
// image, or a separating color class. Standalone validators re-derive each
// claimed property from scratch so tests never trust the extractor.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cpf/colored.hpp"
#include "cpf/errors.hpp"
#include "cpf/graph.hpp"
#include "cpf/matching.hpp"
#include "cpf/reductions.hpp"
#include "cpf/solvers.hpp"

namespace cpf {

// ---------------------------------------------------------------------------
// A unique perfect matching always contains a bridge of its host graph.
// ---------------------------------------------------------------------------

inline EdgeId kotzig_bridge(const Graph& g, const Matching& m) {
    validate_matching(g, m);
    auto unique = find_unique_perfect_matching(g);
    if (!unique || !(*unique == m))
        throw PreconditionError("matching is not the unique perfect matching of the graph");
    auto bs = bridges(g);
    for (EdgeId e : m.edges)  // ascending, so the answer is deterministic
        if (std::binary_search(bs.begin(), bs.end(), e)) return e;
    throw Error("unique perfect matching contains no bridge");
}

// ---------------------------------------------------------------------------
// Color-separating vertices of properly-colored-acyclic graphs
// ---------------------------------------------------------------------------

// A vertex u together with, for every connected component of g minus u, the
// single color carried by all edges from u into that component (absent when u
// sends no edge there).
struct ColorSeparation {
    struct Component {
        std::vector<VertexId> vertices;  // ascending
        std::optional<ColorId> color;
    };
    VertexId vertex = 0;
    std::vector<Component> components;
};

namespace detail {

// The per-component color assignment at u, or nullopt when some component of
// g minus u sees two colors from u.
inline std::optional<ColorSeparation> color_separation_at(const EdgeColoredGraph& g,
                                                          VertexId u) {
    std::vector<VertexId> rest;
    for (VertexId v : g.graph.vertices())
        if (v != u) rest.push_back(v);
    auto comps = connected_components(induced_subgraph(g.graph, rest));
    std::map<VertexId, std::size_t> comp_of;
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (VertexId v : comps[i]) comp_of[v] = i;
    std::vector<std::optional<ColorId>> colors(comps.size());
    for (EdgeId e : g.graph.incident(u)) {
        std::size_t ci = comp_of.at(g.graph.other_end(e, u));
        if (colors[ci] && *colors[ci] != g.color_of(e)) return std::nullopt;
        colors[ci] = g.color_of(e);
    }
    ColorSeparation out;
    out.vertex = u;
    for (std::size_t i = 0; i < comps.size(); ++i)
        out.components.push_back({std::move(comps[i]), colors[i]});
    return out;
}

}  // namespace detail

// Lowest-id vertex whose removal leaves every component seeing one color of
// its edges. Guaranteed to exist when no properly colored cycle does.
inline ColorSeparation yeo_separating_vertex(const EdgeColoredGraph& g) {
    validate_edge_colored(g);
    if (g.graph.vertex_count() == 0) throw InputError("graph has no vertices");
    if (pc_search(g, WalkKind::cycle))
        throw PreconditionError(
            "a properly colored cycle exists: no color-separating vertex is guaranteed");
    for (VertexId u : g.graph.vertices())
        if (auto sep = detail::color_separation_at(g, u)) return *sep;
    throw Error("no color-separating vertex despite properly-colored acyclicity");
}

// Re-derives the separation property from scratch: the listed components must
// be exactly the components of g minus the vertex, and every incident edge
// must match its component's single assigned color.
inline void validate_color_separation(const EdgeColoredGraph& g, const ColorSeparation& sep) {
    validate_edge_colored(g);
    if (!g.graph.has_vertex(sep.vertex))
        throw InputError("invalid separation: unknown vertex " + std::to_string(sep.vertex));
    std::vector<VertexId> rest;
    for (VertexId v : g.graph.vertices())
        if (v != sep.vertex) rest.push_back(v);
    auto comps = connected_components(induced_subgraph(g.graph, rest));
    if (comps.size() != sep.components.size())
        throw InputError("invalid separation: wrong number of components");
    std::map<VertexId, std::size_t> claimed_of;
    for (std::size_t i = 0; i < sep.components.size(); ++i) {
        if (sep.components[i].vertices.empty())
            throw InputError("invalid separation: empty component");
        for (VertexId v : sep.components[i].vertices) {
            if (!claimed_of.emplace(v, i).second)
                throw InputError("invalid separation: vertex listed twice");
        }
    }
    for (const auto& comp : comps) {
        auto it = claimed_of.find(comp.front());
        if (it == claimed_of.end())
            throw InputError("invalid separation: missing vertex " + std::to_string(comp.front()));
        std::vector<VertexId> claimed = sep.components[it->second].vertices;
        std::sort(claimed.begin(), claimed.end());
        if (claimed != comp)
            throw InputError("invalid separation: component grouping mismatch");
    }
    std::vector<std::optional<ColorId>> seen(sep.components.size());
    for (EdgeId e : g.graph.incident(sep.vertex)) {
        VertexId w = g.graph.other_end(e, sep.vertex);
        auto it = claimed_of.find(w);
        if (it == claimed_of.end())
            throw InputError("invalid separation: neighbor missing from components");
        const auto& assigned = sep.components[it->second].color;
        if (!assigned || *assigned != g.color_of(e))
            throw InputError("invalid separation: edge color disagrees with its component");
        seen[it->second] = g.color_of(e);
    }
    for (std::size_t i = 0; i < sep.components.size(); ++i)
        if (sep.components[i].color && !seen[i])
            throw InputError("invalid separation: color assigned to an untouched component");
}

// ---------------------------------------------------------------------------
// Bridges from trail-acyclicity of transition systems
// ---------------------------------------------------------------------------

// Connected transition graphs plus no compatible closed trail force a bridge,
// located by projecting a color-separating vertex of the line-graph image
// back to the source edge it stands for.
inline EdgeId ft_bridge(const Graph& g, const TransitionSystem& t) {
    validate_transition_system(g, t);
    if (g.edge_count() == 0) throw PreconditionError("graph has no edges");
    for (VertexId v : g.vertices())
        if (connected_components(t.at(g, v)).size() > 1)
            throw PreconditionError("transition graph at vertex " + std::to_string(v) +
                                    " is disconnected");
    if (compatible_closed_trail(g, t))
        throw PreconditionError("a compatible closed trail exists");
    auto lec = ec_line_graph(g, t);
    // Image vertices are source edge ids; the separating vertex is the edge.
    EdgeId e = yeo_separating_vertex(lec.instance).vertex;
    auto bs = bridges(g);
    if (!std::binary_search(bs.begin(), bs.end(), e))
        throw Error("projected color-separating vertex is not a bridge");
    return e;
}

// Specialization to edge colorings: chromatic degree two everywhere makes the
// induced transition graphs connected, so trail-acyclicity again forces a
// bridge.
inline EdgeId pc_trail_bridge(const EdgeColoredGraph& g) {
    validate_edge_colored(g);
    for (VertexId v : g.graph.vertices())
        if (chromatic_degree(g, v) < 2)
            throw PreconditionError("vertex " + std::to_string(v) +
                                    " has chromatic degree below two");
    if (pc_search(g, WalkKind::closed_trail))
        throw PreconditionError("a properly colored closed trail exists");
    return ft_bridge(g.graph, induced_transition_system(g));
}

// ---------------------------------------------------------------------------
// Separating color classes of rainbow-acyclic multipartite decompositions
// ---------------------------------------------------------------------------

// A color class together with its multipartite vertex partition; deleting the
// class's edges leaves no connection between vertices of different parts.
struct SeparatingClass {
    ColorId color = 0;
    std::vector<std::vector<VertexId>> parts;  // ordered by smallest member, each ascending
};

namespace detail {

// Multipartite partition of one color class's spanned subgraph.
inline std::optional<std::vector<std::vector<VertexId>>> class_partition(
    const EdgeColoredGraph& g, ColorId c) {
    std::set<VertexId> covered;
    std::vector<EdgeId> es;
    for (EdgeId e : g.graph.edges()) {
        if (g.color_of(e) != c) continue;
        auto [u, v] = g.graph.endpoints(e);
        covered.insert(u);
        covered.insert(v);
        es.push_back(e);
    }
    GraphBuilder b(g.graph.allows_parallel());
    for (VertexId v : covered) b.add_vertex(v);
    for (EdgeId e : es) {
        auto [u, v] = g.graph.endpoints(e);
        b.add_edge(e, u, v);
    }
    return complete_multipartite_partition(b.build());
}

inline EdgeColoredGraph induced_colored(const EdgeColoredGraph& g,
                                        const std::vector<VertexId>& keep) {
    Graph sub = induced_subgraph(g.graph, keep);
    std::vector<ColorId> cols;
    for (EdgeId e : sub.edges()) cols.push_back(g.color_of(e));
    return edge_colored(std::move(sub), std::move(cols));
}

// The induction behind the separating class: find a color-separating vertex
// of the star image. A hub names its class outright. An original vertex u
// either centers a star class (which then separates u from the leaves) or
// points into the component left by deleting u, where a strictly smaller
// instance yields the class. Isolated vertices are stripped first so the
// chosen vertex always has an incident edge.
inline SeparatingClass separating_class_rec(const EdgeColoredGraph& g0) {
    std::vector<VertexId> busy;
    for (VertexId v : g0.graph.vertices())
        if (!g0.graph.incident(v).empty()) busy.push_back(v);
    EdgeColoredGraph g = induced_colored(g0, busy);

    auto art = rainbow_star_reduction(g);
    const VertexId hub_base = g.graph.max_vertex_id() + 1;
    auto classes = color_classes(g);  // ascending by color, aligned with hub ids
    ColorSeparation sep = yeo_separating_vertex(art.instance);

    auto partition_of = [&](ColorId c) {
        auto parts = class_partition(g, c);
        if (!parts || parts->size() < 2)
            throw Error("separating class lost its multipartite partition");
        return *parts;
    };

    if (!g.graph.has_vertex(sep.vertex)) {
        ColorId c = classes[static_cast<std::size_t>(sep.vertex - hub_base)].first;
        return {c, partition_of(c)};
    }

    VertexId u = sep.vertex;
    ColorId c = g.color_of(g.graph.incident(u).front());
    bool star_at_u = true;
    for (EdgeId e : g.graph.edges())
        if (g.color_of(e) == c && !g.graph.is_endpoint(e, u)) star_at_u = false;
    if (star_at_u) return {c, partition_of(c)};

    std::vector<VertexId> rest;
    for (VertexId v : g.graph.vertices())
        if (v != u) rest.push_back(v);
    EdgeColoredGraph gu = induced_colored(g, rest);
    std::optional<VertexId> seed;
    for (EdgeId e : gu.graph.edges())
        if (gu.color_of(e) == c) {
            seed = gu.graph.endpoints(e).first;
            break;
        }
    if (!seed) throw Error("class vanished after deleting the separating vertex");
    std::vector<VertexId> fverts;
    for (auto& comp : connected_components(gu.graph))
        if (std::binary_search(comp.begin(), comp.end(), *seed)) fverts = std::move(comp);
    SeparatingClass inner = separating_class_rec(induced_colored(gu, fverts));
    // A different color's class lies wholly inside the component, so its
    // partition is unchanged in g; the same color falls back to the full
    // class at u, which separates u from the rest as well.
    return {inner.color, partition_of(inner.color)};
}

}  // namespace detail

// A color class whose removal disconnects its own vertex partition. Exists in
// every rainbow-acyclic multipartite decomposition with at least one edge.
inline SeparatingClass rainbow_separating_class(const EdgeColoredGraph& g) {
    validate_edge_colored(g);
    for (const auto& [color, edges] : color_classes(g)) {
        (void)edges;
        if (!detail::class_partition(g, color))
            throw PreconditionError("color class " + std::to_string(color) +
                                    " is not complete multipartite");
    }
    auto cyc = rainbow_search(g, WalkKind::cycle);
    if (cyc.status == SearchStatus::budget_exhausted)
        throw Error("rainbow cycle check exhausted its budget on a multipartite instance");
    if (cyc.status == SearchStatus::found)
        throw PreconditionError("a rainbow cycle exists: no separating class is guaranteed");
    if (g.graph.edge_count() == 0) throw PreconditionError("graph has no edges");
    return detail::separating_class_rec(g);
}

// Re-derives the separation property: the parts must partition exactly the
// class's vertices with the class edges as all cross-part pairs, and after
// deleting the class no component may meet two different parts.
inline void validate_separating_class(const EdgeColoredGraph& g, const SeparatingClass& sc) {
    validate_edge_colored(g);
    std::set<VertexId> covered;
    std::set<std::pair<VertexId, VertexId>> class_pairs;
    std::vector<EdgeId> class_edges;
    for (EdgeId e : g.graph.edges()) {
        if (g.color_of(e) != sc.color) continue;
        auto [u, v] = g.graph.endpoints(e);
        covered.insert(u);
        covered.insert(v);
        class_pairs.insert({std::min(u, v), std::max(u, v)});
        class_edges.push_back(e);
    }
    if (class_edges.empty()) throw InputError("invalid separating class: no such color");
    std::map<VertexId, std::size_t> part_of;
    for (std::size_t i = 0; i < sc.parts.size(); ++i) {
        if (sc.parts[i].empty()) throw InputError("invalid separating class: empty part");
        for (VertexId v : sc.parts[i]) {
            if (!covered.count(v))
                throw InputError("invalid separating class: part vertex outside the class");
            if (!part_of.emplace(v, i).second)
                throw InputError("invalid separating class: vertex in two parts");
        }
    }
    if (part_of.size() != covered.size())
        throw InputError("invalid separating class: parts miss a class vertex");
    std::size_t cross = 0;
    for (VertexId u : covered)
        for (VertexId v : covered) {
            if (u >= v || part_of[u] == part_of[v]) continue;
            ++cross;
            if (!class_pairs.count({u, v}))
                throw InputError("invalid separating class: missing cross-part edge");
        }
    if (cross != class_pairs.size())
        throw InputError("invalid separating class: class edge inside a part");

    GraphBuilder b(g.graph.allows_parallel());
    for (VertexId v : g.graph.vertices()) b.add_vertex(v);
    for (EdgeId e : g.graph.edges()) {
        if (g.color_of(e) == sc.color) continue;
        auto [u, v] = g.graph.endpoints(e);
        b.add_edge(e, u, v);
    }
    for (const auto& comp : connected_components(b.build())) {
        std::optional<std::size_t> met;
        for (VertexId v : comp) {
            auto it = part_of.find(v);
            if (it == part_of.end()) continue;
            if (met && *met != it->second)
                throw InputError(
                    "invalid separating class: two parts stay connected without the class");
            met = it->second;
        }
    }
}

}  // namespace cpf
