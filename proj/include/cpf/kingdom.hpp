#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "cpf/matching.hpp"

namespace cpf {

namespace detail {

inline void require_unique_pm(const Graph& g, const Matching& m) {
    validate_matching(g, m);
    if (!is_perfect_matching(g, m))
        throw PreconditionError("matching is not perfect");
    if (find_alternating_cycle(g, m))
        throw PreconditionError("perfect matching is not unique");
}

// Matching edges of m that are bridges of h, ascending.
inline std::vector<EdgeId> matching_bridges(const Graph& h, const Matching& m) {
    std::vector<EdgeId> out;
    for (EdgeId e : bridges(h))
        if (m.contains(e)) out.push_back(e);
    return out;
}

inline std::vector<VertexId> minus_endpoints(const Graph& h, std::vector<VertexId> remaining,
                                             EdgeId e) {
    auto [u, v] = h.endpoints(e);
    remaining.erase(std::remove_if(remaining.begin(), remaining.end(),
                                   [&](VertexId x) { return x == u || x == v; }),
                    remaining.end());
    return remaining;
}

}  // namespace detail

// One decomposition order of a unique perfect matching: repeatedly delete the
// smallest matching edge that is currently a bridge, together with its
// endpoints. Uniqueness guarantees such a bridge always exists.
inline std::vector<EdgeId> bridge_deletion_ordering(const Graph& g, const Matching& m) {
    detail::require_unique_pm(g, m);
    std::vector<VertexId> remaining = g.vertices();
    std::vector<EdgeId> order;
    while (!remaining.empty()) {
        Graph h = induced_subgraph(g, remaining);
        auto mb = detail::matching_bridges(h, m);
        if (mb.empty()) throw Error("internal: deletion stalled on a unique perfect matching");
        order.push_back(mb.front());
        remaining = detail::minus_endpoints(h, std::move(remaining), mb.front());
    }
    return order;
}

// Vertices that survive bridge deletion when e itself is never deleted: the
// region whose decomposition is blocked until e goes. The fixpoint is
// confluent (deletable bridges stay deletable), so the smallest-first choice
// below is just a tie-break, not a semantic choice.
inline std::vector<VertexId> kingdom(const Graph& g, const Matching& m, EdgeId e) {
    detail::require_unique_pm(g, m);
    if (!g.has_edge(e)) throw InputError("unknown edge id " + std::to_string(e));
    if (!m.contains(e)) throw PreconditionError("kingdom is defined for matching edges only");
    std::vector<VertexId> remaining = g.vertices();
    for (;;) {
        Graph h = induced_subgraph(g, remaining);
        std::optional<EdgeId> pick;
        for (EdgeId f : detail::matching_bridges(h, m))
            if (f != e) {
                pick = f;
                break;
            }
        if (!pick) return remaining;
        remaining = detail::minus_endpoints(h, std::move(remaining), *pick);
    }
}

namespace detail {

// Blossom-binding decision without hypothesis re-verification; `mate` is the
// index map of m. Returns a blossom rooted at u containing f, if any.
//
// The search graph deletes u, its mate, and every exposed vertex, then
// attaches fresh terminals s, t to the surviving former neighbors of u. An
// augmenting path from s to t crossing f then lifts to exactly the wanted
// blossom: its interior avoids u (deleted), so the lift is a simple odd
// cycle, matched within except at u. Keeping u around instead would let the
// path cross u and lift to a non-simple walk; keeping other exposed vertices
// would break the two-exposed-vertices hypothesis, and is harmless to drop
// since a blossom cycle is matched everywhere except its root.
inline std::optional<Blossom> blossom_binds_core(const Graph& g, const Matching& m,
                                                 const std::vector<int>& mate, VertexId u,
                                                 EdgeId f) {
    int mate_idx = mate[g.vertex_index(u)];
    std::optional<VertexId> partner;
    std::optional<EdgeId> stem;
    if (mate_idx != -1) {
        partner = g.vertex_at(static_cast<std::size_t>(mate_idx));
        stem = g.find_edge(u, *partner);
    }
    if (stem && f == *stem) return std::nullopt;  // the stem never lies on its own cycle

    std::vector<VertexId> keep;
    for (VertexId v : g.vertices()) {
        if (v == u || (partner && v == *partner)) continue;
        if (mate[g.vertex_index(v)] == -1) continue;
        keep.push_back(v);
    }
    Graph base = induced_subgraph(g, keep);

    VertexId s = g.max_vertex_id() + 1, t = g.max_vertex_id() + 2;
    GraphBuilder b;
    for (VertexId v : base.vertices()) b.add_vertex(v);
    for (EdgeId e : base.edges()) {
        auto [x, y] = base.endpoints(e);
        b.add_edge(e, x, y);
    }
    b.add_vertex(s);
    b.add_vertex(t);
    EdgeId next = g.max_edge_id() + 1;
    for (EdgeId e : g.incident(u)) {
        VertexId x = g.other_end(e, u);
        if (!base.has_vertex(x)) continue;
        b.add_edge(next++, s, x);
        b.add_edge(next++, t, x);
    }
    Graph split = b.build();

    Matching sub;
    for (EdgeId e : m.edges)
        if (!stem || e != *stem) sub.edges.push_back(e);

    auto p = prescribed_path_core(split, sub, f, s, t);
    if (!p) return std::nullopt;

    // Lift: relabel the s/t endpoints back to u and remap their two edges.
    Blossom out;
    out.root = u;
    out.stem = stem;
    out.cycle.kind = WalkKind::cycle;
    out.cycle.constraint = ConstraintKind::alternating;
    out.cycle.vertices = p->vertices;
    out.cycle.edges = p->edges;
    out.cycle.vertices.front() = u;
    out.cycle.vertices.back() = u;
    auto ends = [&](std::size_t i) { return out.cycle.vertices[i]; };
    auto first_edge = g.find_edge(u, ends(1));
    auto last_edge = g.find_edge(ends(out.cycle.vertices.size() - 2), u);
    if (!first_edge || !last_edge) throw Error("internal: blossom lift lost an edge");
    out.cycle.edges.front() = *first_edge;
    out.cycle.edges.back() = *last_edge;
    return out;
}

}  // namespace detail

// Blossom rooted at u whose cycle contains the matching edge f, or absent.
// m must admit no alternating cycle; u may be matched or exposed.
inline std::optional<Blossom> blossom_binds(const Graph& g, const Matching& m, VertexId u,
                                            EdgeId f) {
    auto mate = detail::mate_map(g, m);
    if (!g.has_vertex(u)) throw InputError("unknown vertex id " + std::to_string(u));
    if (!m.contains(f)) throw PreconditionError("bound edge must be a matching edge");
    {
        std::vector<VertexId> matched;
        for (VertexId v : g.vertices())
            if (mate[g.vertex_index(v)] != -1) matched.push_back(v);
        Graph h = induced_subgraph(g, matched);
        if (find_alternating_cycle(h, m))
            throw PreconditionError("matching admits an alternating cycle");
    }
    auto b = detail::blossom_binds_core(g, m, mate, u, f);
    if (b) validate_blossom(g, m, *b);
    return b;
}

// Edge form of blossom-binding: e binds f when e is the stem of a blossom
// whose cycle contains f, i.e. when either endpoint of e roots such a blossom.
inline std::optional<Blossom> stem_binds(const Graph& g, const Matching& m, EdgeId e, EdgeId f) {
    if (!m.contains(e)) throw PreconditionError("binding edge must be a matching edge");
    auto [v, w] = g.endpoints(e);
    if (auto b = blossom_binds(g, m, v, f)) return b;
    return blossom_binds(g, m, w, f);
}

// The binding relation over all matching-edge pairs, its transitive closure,
// and one blossom witness per bound pair.
struct KingdomOrder {
    std::vector<EdgeId> ground;                        // matching edges, ascending
    std::vector<std::pair<EdgeId, EdgeId>> binds;      // e -> f, lexicographic
    std::vector<std::pair<EdgeId, EdgeId>> precedes;   // transitive closure of binds
    std::map<std::pair<EdgeId, EdgeId>, Blossom> witness;

    bool binds_pair(EdgeId e, EdgeId f) const {
        return std::binary_search(binds.begin(), binds.end(), std::make_pair(e, f));
    }
    bool precedes_pair(EdgeId e, EdgeId f) const {
        return std::binary_search(precedes.begin(), precedes.end(), std::make_pair(e, f));
    }
};

inline KingdomOrder kingdom_order(const Graph& g, const Matching& m) {
    detail::require_unique_pm(g, m);
    auto mate = detail::mate_map(g, m);
    KingdomOrder ko;
    ko.ground = m.edges;
    const std::size_t k = ko.ground.size();
    std::vector<std::vector<char>> reach(k, std::vector<char>(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
        auto [v, w] = g.endpoints(ko.ground[i]);
        for (std::size_t j = 0; j < k; ++j) {
            if (i == j) continue;
            auto b = detail::blossom_binds_core(g, m, mate, v, ko.ground[j]);
            if (!b) b = detail::blossom_binds_core(g, m, mate, w, ko.ground[j]);
            if (b) {
                reach[i][j] = 1;
                ko.binds.push_back({ko.ground[i], ko.ground[j]});
                ko.witness.emplace(std::make_pair(ko.ground[i], ko.ground[j]), std::move(*b));
            }
        }
    }
    for (std::size_t mid = 0; mid < k; ++mid)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (reach[i][mid] && reach[mid][j]) reach[i][j] = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (reach[i][i]) throw Error("internal: kingdom order has a cycle");
        for (std::size_t j = 0; j < k; ++j)
            if (reach[i][j]) ko.precedes.push_back({ko.ground[i], ko.ground[j]});
    }
    return ko;
}

// Quotient of g that identifies the blossom cycle into one fresh vertex.
// Surviving edges keep their ids (that is the back-map); quotient-parallel
// edges collapse to one representative, a matching edge when present so the
// induced matching stays valid, smallest id otherwise.
inline std::tuple<Graph, Matching, VertexId> shrink_blossom(const Graph& g, const Matching& m,
                                                            const Blossom& b) {
    validate_blossom(g, m, b);
    std::vector<char> on_cycle(g.vertex_count(), 0);
    for (std::size_t i = 0; i + 1 < b.cycle.vertices.size(); ++i)
        on_cycle[g.vertex_index(b.cycle.vertices[i])] = 1;

    VertexId fresh = g.max_vertex_id() + 1;
    GraphBuilder gb;
    for (VertexId v : g.vertices())
        if (!on_cycle[g.vertex_index(v)]) gb.add_vertex(v);
    gb.add_vertex(fresh);

    std::map<std::pair<VertexId, VertexId>, EdgeId> rep;  // quotient endpoints -> edge id
    for (EdgeId e : g.edges()) {
        auto [x, y] = g.endpoints(e);
        bool cx = on_cycle[g.vertex_index(x)], cy = on_cycle[g.vertex_index(y)];
        if (cx && cy) continue;
        VertexId qx = cx ? fresh : x, qy = cy ? fresh : y;
        std::pair<VertexId, VertexId> key = std::minmax(qx, qy);
        auto it = rep.find(key);
        if (it == rep.end()) {
            rep.emplace(key, e);
        } else if (m.contains(e) && !m.contains(it->second)) {
            it->second = e;
        }
    }
    for (auto& [key, e] : rep) gb.add_edge(e, key.first, key.second);
    Graph q = gb.build();

    Matching mq;
    for (EdgeId e : m.edges)
        if (q.has_edge(e)) mq.edges.push_back(e);
    return {std::move(q), std::move(mq), fresh};
}

}  // namespace cpf
