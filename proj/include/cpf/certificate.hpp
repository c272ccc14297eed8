#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cpf/errors.hpp"
#include "cpf/graph.hpp"

namespace cpf {

// Shape of a witness walk. Open kinds list k vertices and k-1 edges; closed
// kinds repeat the first vertex at the end (k+1 vertices, k edges).
enum class WalkKind { walk, trail, path, cycle, closed_trail };

// Which side constraint the certificate claims to satisfy. `none` means the
// walk structure alone is the claim.
enum class ConstraintKind {
    none,
    transitions,         // consecutive edges allowed by a transition system
    properly_colored,    // consecutive edges differently colored
    rainbow,             // all edge colors pairwise distinct
    locally_two_colored, // consecutive edges on different sides at the shared vertex
    alternating,         // edges alternate in/out of a matching
    directed,            // arcs traversed tail-to-head
    pc_directed,         // directed + properly colored
    alternating_directed // directed + alternating
};

inline bool is_closed(WalkKind k) { return k == WalkKind::cycle || k == WalkKind::closed_trail; }

inline std::string to_string(WalkKind k) {
    switch (k) {
        case WalkKind::walk: return "walk";
        case WalkKind::trail: return "trail";
        case WalkKind::path: return "path";
        case WalkKind::cycle: return "cycle";
        case WalkKind::closed_trail: return "closed-trail";
    }
    return "?";
}

inline std::string to_string(ConstraintKind c) {
    switch (c) {
        case ConstraintKind::none: return "none";
        case ConstraintKind::transitions: return "transitions";
        case ConstraintKind::properly_colored: return "pc";
        case ConstraintKind::rainbow: return "rainbow";
        case ConstraintKind::locally_two_colored: return "local2";
        case ConstraintKind::alternating: return "alternating";
        case ConstraintKind::directed: return "directed";
        case ConstraintKind::pc_directed: return "pc-directed";
        case ConstraintKind::alternating_directed: return "alternating-directed";
    }
    return "?";
}

// A walk witness: alternating vertex/edge sequence v0 e0 v1 e1 ... For closed
// kinds vertices.front() == vertices.back(). Edge ids refer to the instance
// the certificate was issued for (arcs for directed instances).
struct Certificate {
    WalkKind kind = WalkKind::walk;
    ConstraintKind constraint = ConstraintKind::none;
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;

    std::size_t length() const { return edges.size(); }

    bool operator==(const Certificate& o) const {
        return kind == o.kind && constraint == o.constraint && vertices == o.vertices && edges == o.edges;
    }
};

inline Certificate reversed(const Certificate& c) {
    Certificate r = c;
    std::reverse(r.vertices.begin(), r.vertices.end());
    std::reverse(r.edges.begin(), r.edges.end());
    return r;
}

// Strongest walk kind the given content supports. `closed` is the caller's
// intent: an open walk that happens to return to its start is still open (it
// makes no claim about the turn through the seam), so the kind is chosen from
// the open ladder and vertex repetition keeps it below `path`.
inline WalkKind canonical_walk_kind(const std::vector<VertexId>& vertices,
                                    const std::vector<EdgeId>& edges, bool closed) {
    std::vector<EdgeId> es = edges;
    std::sort(es.begin(), es.end());
    bool edges_distinct = std::adjacent_find(es.begin(), es.end()) == es.end();
    std::vector<VertexId> vs(vertices.begin(), vertices.end() - (closed ? 1 : 0));
    std::sort(vs.begin(), vs.end());
    bool vertices_distinct = std::adjacent_find(vs.begin(), vs.end()) == vs.end();
    if (closed) {
        if (vertices_distinct && edges_distinct) return WalkKind::cycle;
        if (edges_distinct) return WalkKind::closed_trail;
        return WalkKind::walk;
    }
    if (vertices_distinct) return WalkKind::path;
    if (edges_distinct) return WalkKind::trail;
    return WalkKind::walk;
}

// Builds a certificate labeled with the strongest kind its content supports.
// Every certificate-producing component uses this, so equal walks always carry
// equal kinds and round-trip identities hold exactly.
inline Certificate make_walk_certificate(ConstraintKind constraint, std::vector<VertexId> vertices,
                                         std::vector<EdgeId> edges, bool closed) {
    if (vertices.empty()) throw InputError("certificate needs at least one vertex");
    if (closed && (edges.empty() || vertices.front() != vertices.back()))
        throw InputError("closed certificate must return to its start");
    Certificate c;
    c.kind = canonical_walk_kind(vertices, edges, closed);
    c.constraint = constraint;
    c.vertices = std::move(vertices);
    c.edges = std::move(edges);
    return c;
}

}  // namespace cpf
