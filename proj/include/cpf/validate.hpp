#pragma once

// Certificate checking from first principles. Everything here works directly
// off the instance accessors and the walk sequence itself; none of the solver
// or reduction machinery is used, so a bug there cannot hide behind a
// matching bug here.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "cpf/certificate.hpp"
#include "cpf/colored.hpp"
#include "cpf/digraph.hpp"
#include "cpf/errors.hpp"
#include "cpf/graph.hpp"
#include "cpf/matching.hpp"

namespace cpf {

namespace vdetail {

inline void fail(const std::string& why) { throw InputError("invalid certificate: " + why); }

// Shape, incidence, and the distinctness rules of the claimed walk kind.
// Leaves constraint checking to the caller.
inline void check_shape_undirected(const Graph& g, const Certificate& c) {
    if (c.vertices.empty()) fail("no vertices");
    if (c.vertices.size() != c.edges.size() + 1) fail("vertex/edge counts do not interleave");
    for (VertexId v : c.vertices)
        if (!g.has_vertex(v)) fail("unknown vertex " + std::to_string(v));
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        EdgeId e = c.edges[i];
        if (!g.has_edge(e)) fail("unknown edge " + std::to_string(e));
        auto [a, b] = g.endpoints(e);
        VertexId x = c.vertices[i], y = c.vertices[i + 1];
        if (!((a == x && b == y) || (a == y && b == x)))
            fail("edge " + std::to_string(e) + " does not join consecutive vertices");
    }
    if (is_closed(c.kind)) {
        if (c.vertices.front() != c.vertices.back()) fail("closed walk must return to its start");
        if (c.edges.size() < 2) fail("closed walk needs at least two edges");
    }
    if (c.kind == WalkKind::trail || c.kind == WalkKind::closed_trail ||
        c.kind == WalkKind::path || c.kind == WalkKind::cycle) {
        std::set<EdgeId> es(c.edges.begin(), c.edges.end());
        if (es.size() != c.edges.size()) fail("repeated edge in a trail");
    }
    if (c.kind == WalkKind::path) {
        std::set<VertexId> vs(c.vertices.begin(), c.vertices.end());
        if (vs.size() != c.vertices.size()) fail("repeated vertex in a path");
    }
    if (c.kind == WalkKind::cycle) {
        std::set<VertexId> vs(c.vertices.begin(), c.vertices.end() - 1);
        if (vs.size() != c.vertices.size() - 1) fail("repeated vertex in a cycle");
    }
}

inline void check_shape_directed(const Digraph& d, const Certificate& c) {
    if (c.vertices.empty()) fail("no vertices");
    if (c.vertices.size() != c.edges.size() + 1) fail("vertex/arc counts do not interleave");
    for (VertexId v : c.vertices)
        if (!d.has_vertex(v)) fail("unknown vertex " + std::to_string(v));
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        ArcId a = c.edges[i];
        if (!d.has_arc(a)) fail("unknown arc " + std::to_string(a));
        if (d.tail(a) != c.vertices[i] || d.head(a) != c.vertices[i + 1])
            fail("arc " + std::to_string(a) + " is not traversed tail to head");
    }
    if (is_closed(c.kind)) {
        if (c.vertices.front() != c.vertices.back()) fail("closed walk must return to its start");
        if (c.edges.empty()) fail("closed walk needs at least one arc");
    }
    if (c.kind == WalkKind::trail || c.kind == WalkKind::closed_trail ||
        c.kind == WalkKind::path || c.kind == WalkKind::cycle) {
        std::set<ArcId> as(c.edges.begin(), c.edges.end());
        if (as.size() != c.edges.size()) fail("repeated arc in a trail");
    }
    if (c.kind == WalkKind::path) {
        std::set<VertexId> vs(c.vertices.begin(), c.vertices.end());
        if (vs.size() != c.vertices.size()) fail("repeated vertex in a path");
    }
    if (c.kind == WalkKind::cycle) {
        std::set<VertexId> vs(c.vertices.begin(), c.vertices.end() - 1);
        if (vs.size() != c.vertices.size() - 1) fail("repeated vertex in a cycle");
    }
}

// Visits every consecutive edge pair, including the closing pair of a closed
// walk; pivot is the vertex the pair meets at.
template <typename F>
void for_each_turn(const Certificate& c, F&& visit) {
    for (std::size_t i = 0; i + 1 < c.edges.size(); ++i)
        visit(c.edges[i], c.edges[i + 1], c.vertices[i + 1]);
    if (is_closed(c.kind) && c.edges.size() >= 2)
        visit(c.edges.back(), c.edges.front(), c.vertices.front());
}

}  // namespace vdetail

// Plain walk claims (constraint `none`).
inline void validate_certificate(const Graph& g, const Certificate& c) {
    if (c.constraint != ConstraintKind::none)
        throw InputError("plain graph cannot judge constraint " + to_string(c.constraint));
    vdetail::check_shape_undirected(g, c);
}

// Transition-compatible walks: consecutive edges allowed at the shared vertex.
inline void validate_certificate(const Graph& g, const TransitionSystem& t, const Certificate& c) {
    if (c.constraint != ConstraintKind::transitions)
        throw InputError("expected a transition-compatible certificate");
    vdetail::check_shape_undirected(g, c);
    validate_transition_system(g, t);
    vdetail::for_each_turn(c, [&](EdgeId e, EdgeId f, VertexId pivot) {
        const Graph& local = t.at(g, pivot);
        if (e == f || !local.has_vertex(e) || !local.has_vertex(f) || !local.find_edge(e, f))
            vdetail::fail("transition " + std::to_string(e) + " -> " + std::to_string(f) +
                          " not allowed at vertex " + std::to_string(pivot));
    });
}

// Properly colored or rainbow walks on an edge-colored graph.
inline void validate_certificate(const EdgeColoredGraph& g, const Certificate& c) {
    if (c.constraint != ConstraintKind::properly_colored && c.constraint != ConstraintKind::rainbow)
        throw InputError("edge-colored graph expects a pc or rainbow certificate");
    vdetail::check_shape_undirected(g.graph, c);
    if (c.constraint == ConstraintKind::properly_colored) {
        vdetail::for_each_turn(c, [&](EdgeId e, EdgeId f, VertexId) {
            if (g.color_of(e) == g.color_of(f))
                vdetail::fail("edges " + std::to_string(e) + " and " + std::to_string(f) +
                              " share color " + std::to_string(g.color_of(e)));
        });
    } else {
        std::set<ColorId> seen;
        for (EdgeId e : c.edges)
            if (!seen.insert(g.color_of(e)).second)
                vdetail::fail("color " + std::to_string(g.color_of(e)) + " appears twice");
    }
}

// Side-alternating walks on a locally 2-colored graph.
inline void validate_certificate(const LocallyTwoColoredGraph& l, const Certificate& c) {
    if (c.constraint != ConstraintKind::locally_two_colored)
        throw InputError("expected a locally-2-colored certificate");
    vdetail::check_shape_undirected(l.graph, c);
    vdetail::for_each_turn(c, [&](EdgeId e, EdgeId f, VertexId pivot) {
        if (l.side_at(e, pivot) == l.side_at(f, pivot))
            vdetail::fail("edges " + std::to_string(e) + " and " + std::to_string(f) +
                          " meet vertex " + std::to_string(pivot) + " on the same side");
    });
}

// Alternating walks relative to a matching.
inline void validate_certificate(const Graph& g, const Matching& m, const Certificate& c) {
    if (c.constraint != ConstraintKind::alternating)
        throw InputError("expected an alternating certificate");
    vdetail::check_shape_undirected(g, c);
    std::set<EdgeId> in_m(m.edges.begin(), m.edges.end());
    for (EdgeId e : in_m)
        if (!g.has_edge(e)) vdetail::fail("matching references unknown edge " + std::to_string(e));
    vdetail::for_each_turn(c, [&](EdgeId e, EdgeId f, VertexId) {
        if (in_m.count(e) == in_m.count(f))
            vdetail::fail("edges " + std::to_string(e) + " and " + std::to_string(f) +
                          " do not alternate with the matching");
    });
}

// Directed walks.
inline void validate_certificate(const Digraph& d, const Certificate& c) {
    if (c.constraint != ConstraintKind::directed)
        throw InputError("plain digraph expects a directed certificate");
    vdetail::check_shape_directed(d, c);
}

// Properly colored directed walks.
inline void validate_certificate(const ArcColoredDigraph& d, const Certificate& c) {
    if (c.constraint != ConstraintKind::pc_directed)
        throw InputError("arc-colored digraph expects a pc-directed certificate");
    vdetail::check_shape_directed(d.graph, c);
    vdetail::for_each_turn(c, [&](ArcId a, ArcId b, VertexId) {
        if (d.color_of(a) == d.color_of(b))
            vdetail::fail("arcs " + std::to_string(a) + " and " + std::to_string(b) +
                          " share color " + std::to_string(d.color_of(a)));
    });
}

// Alternating directed walks relative to a matched digraph.
inline void validate_certificate(const MatchedDigraph& md, const Certificate& c) {
    if (c.constraint != ConstraintKind::alternating_directed)
        throw InputError("matched digraph expects an alternating-directed certificate");
    vdetail::check_shape_directed(md.graph, c);
    vdetail::for_each_turn(c, [&](ArcId a, ArcId b, VertexId) {
        if (md.matched(a) == md.matched(b))
            vdetail::fail("arcs " + std::to_string(a) + " and " + std::to_string(b) +
                          " do not alternate with the matching");
    });
}

}  // namespace cpf
