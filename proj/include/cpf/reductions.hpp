#pragma once

#include <bit>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cpf/certificate.hpp"
#include "cpf/colored.hpp"
#include "cpf/digraph.hpp"
#include "cpf/errors.hpp"
#include "cpf/graph.hpp"
#include "cpf/matching.hpp"
#include "cpf/validate.hpp"

namespace cpf {

// An instance translation together with both certificate directions. `forward`
// maps a source-instance certificate to one on `instance`; `backward` maps an
// `instance` certificate back. Both validate what they are given and what they
// produce, and throw InputError on certificates they do not cover.
template <typename Instance>
struct ReductionArtifact {
    Instance instance;
    std::function<Certificate(const Certificate&)> forward;
    std::function<Certificate(const Certificate&)> backward;
};

namespace detail {

// Collapse runs of equal consecutive vertices (side pairs of one contracted
// vertex decode to the same id; the walk visits it once).
inline std::vector<VertexId> collapse_consecutive(const std::vector<VertexId>& vs) {
    std::vector<VertexId> out;
    for (VertexId v : vs)
        if (out.empty() || out.back() != v) out.push_back(v);
    return out;
}

// Rotate a closed certificate so that edge position r becomes position 0.
// Vertices are rotated in step and the new start is re-appended at the end.
inline Certificate rotate_closed(const Certificate& c, std::size_t r) {
    Certificate out = c;
    if (r == 0) return out;
    std::rotate(out.edges.begin(), out.edges.begin() + static_cast<long>(r), out.edges.end());
    out.vertices.pop_back();
    std::rotate(out.vertices.begin(), out.vertices.begin() + static_cast<long>(r),
                out.vertices.end());
    out.vertices.push_back(out.vertices.front());
    return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Terminal gadget: a graph with a unique perfect matching M whose defining
// property is that for every nonempty terminal subset U, the gadget minus U
// has a perfect matching exactly when |U| = 2.
// ---------------------------------------------------------------------------

struct PGadget {
    Graph graph;
    Matching matching;
    std::vector<VertexId> terminals;
};

// Exhaustively checks the defining property (unique perfect matching plus the
// all-nonempty-subsets deletion test). Guarded at 8 terminals: the subset scan
// is exponential by design.
inline bool verify_p_gadget(const PGadget& p) {
    const std::size_t k = p.terminals.size();
    if (k > 8) throw GuardError("verify_p_gadget checks at most 8 terminals exhaustively");
    if (k == 0) return false;
    std::set<VertexId> ts(p.terminals.begin(), p.terminals.end());
    if (ts.size() != k) return false;
    for (VertexId t : p.terminals)
        if (!p.graph.has_vertex(t))
            throw InputError("gadget terminal " + std::to_string(t) + " is not a vertex");
    validate_matching(p.graph, p.matching);
    if (!is_perfect_matching(p.graph, p.matching)) return false;
    if (find_alternating_cycle(p.graph, p.matching)) return false;  // matching not unique
    for (unsigned mask = 1; mask < (1u << k); ++mask) {
        std::set<VertexId> drop;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) drop.insert(p.terminals[i]);
        std::vector<VertexId> keep;
        for (VertexId v : p.graph.vertices())
            if (!drop.count(v)) keep.push_back(v);
        Graph h = induced_subgraph(p.graph, keep);
        Matching mm = maximum_matching(h);
        bool has_pm = 2 * mm.size() == h.vertex_count();
        if (has_pm != (std::popcount(mask) == 2)) return false;
    }
    return true;
}

// Builds a terminal gadget on the given ids. One terminal: a pendant matched
// partner. Two terminals: the single matched edge. Three or more: each
// terminal x_i gets a matched partner y_i, and all partners attach to a
// matched hub pair {a, b} — deleting exactly two terminals frees two partners
// to absorb the hubs; any other nonempty deletion fails by counting. Fresh ids
// continue past the largest terminal id. Self-checked for up to 8 terminals.
inline PGadget build_p_gadget(const std::vector<VertexId>& terminals) {
    if (terminals.empty()) throw InputError("a terminal gadget needs at least one terminal");
    std::vector<VertexId> sorted = terminals;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("terminal ids must be distinct");
    if (sorted.front() < 0) throw InputError("terminal ids must be non-negative");
    const int k = static_cast<int>(terminals.size());
    const VertexId mx = sorted.back();
    GraphBuilder b(false);
    for (VertexId t : terminals) b.add_vertex(t);
    std::vector<EdgeId> matched;
    if (k == 1) {
        b.add_vertex(mx + 1);
        b.add_edge(0, terminals[0], mx + 1);
        matched = {0};
    } else if (k == 2) {
        b.add_edge(0, terminals[0], terminals[1]);
        matched = {0};
    } else {
        for (int i = 0; i < k; ++i) b.add_vertex(mx + 1 + i);
        const VertexId hub_a = mx + k + 1, hub_b = mx + k + 2;
        b.add_vertex(hub_a).add_vertex(hub_b);
        for (int i = 0; i < k; ++i) {
            b.add_edge(i, terminals[static_cast<std::size_t>(i)], mx + 1 + i);
            matched.push_back(i);
        }
        b.add_edge(k, hub_a, hub_b);
        matched.push_back(k);
        for (int i = 0; i < k; ++i) {
            b.add_edge(k + 1 + 2 * i, mx + 1 + i, hub_a);
            b.add_edge(k + 2 + 2 * i, mx + 1 + i, hub_b);
        }
    }
    PGadget p{b.build(), make_matching(std::move(matched)), terminals};
    if (k <= 8 && !verify_p_gadget(p))
        throw Error("terminal gadget construction failed its self-check");
    return p;
}

// ---------------------------------------------------------------------------
// Transition-local line graph: one vertex per source edge, one edge per
// allowed transition, colored by the vertex the transition happens at. Every
// vertex of the image has chromatic degree at most 2 (an edge has two ends).
// Compatible paths/trails/cycles/closed trails of the source become rainbow
// paths / pc paths / rainbow cycles / pc cycles of the image.
// ---------------------------------------------------------------------------

inline ReductionArtifact<EdgeColoredGraph> ec_line_graph(const Graph& g,
                                                         const TransitionSystem& t) {
    validate_transition_system(g, t);
    GraphBuilder b(true);
    for (EdgeId e : g.edges()) b.add_vertex(e);
    std::vector<ColorId> colors;
    std::map<std::tuple<EdgeId, EdgeId, VertexId>, EdgeId> turn_edge;
    EdgeId next = 0;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        VertexId v = g.vertex_at(i);
        const Graph& tv = t.at(g, v);
        for (EdgeId te : tv.edges()) {
            auto [e, f] = tv.endpoints(te);
            b.add_edge(next, e, f);
            colors.push_back(v);
            turn_edge.emplace(std::make_tuple(std::min(e, f), std::max(e, f), v), next);
            ++next;
        }
    }
    struct Data {
        Graph src;
        TransitionSystem sys;
        EdgeColoredGraph img;
        std::map<std::tuple<EdgeId, EdgeId, VertexId>, EdgeId> turn_edge;
    };
    auto d = std::make_shared<Data>();
    d->src = g;
    d->sys = t;
    d->img = edge_colored(b.build(), std::move(colors));
    d->turn_edge = std::move(turn_edge);

    auto turn_at = [d](EdgeId e, EdgeId f, VertexId pivot) -> EdgeId {
        auto it = d->turn_edge.find(std::make_tuple(std::min(e, f), std::max(e, f), pivot));
        if (it == d->turn_edge.end())
            throw InputError("walk uses a transition outside the system at vertex " +
                             std::to_string(pivot));
        return it->second;
    };

    auto forward = [d, turn_at](const Certificate& c) -> Certificate {
        validate_certificate(d->src, d->sys, c);
        if (c.kind == WalkKind::walk) throw InputError("unsupported certificate kind: walk");
        if (c.edges.empty()) throw InputError("cannot project a walk with no edges");
        bool closed = is_closed(c.kind);
        std::vector<VertexId> vs(c.edges.begin(), c.edges.end());
        std::vector<EdgeId> es;
        for (std::size_t i = 0; i + 1 < c.edges.size(); ++i)
            es.push_back(turn_at(c.edges[i], c.edges[i + 1], c.vertices[i + 1]));
        if (closed) {
            es.push_back(turn_at(c.edges.back(), c.edges.front(), c.vertices.front()));
            vs.push_back(vs.front());
        }
        ConstraintKind want = (c.kind == WalkKind::path || c.kind == WalkKind::cycle)
                                  ? ConstraintKind::rainbow
                                  : ConstraintKind::properly_colored;
        Certificate out = make_walk_certificate(want, std::move(vs), std::move(es), closed);
        validate_certificate(d->img, out);
        return out;
    };

    auto backward = [d](const Certificate& c) -> Certificate {
        validate_certificate(d->img, c);
        if (c.kind == WalkKind::walk) throw InputError("unsupported certificate kind: walk");
        bool closed = is_closed(c.kind);
        std::vector<EdgeId> es(c.vertices.begin(), c.vertices.end() - (closed ? 1 : 0));
        std::vector<VertexId> pivots;
        for (EdgeId le : c.edges) pivots.push_back(d->img.color_of(le));
        std::vector<VertexId> vs;
        if (closed) {
            vs.push_back(pivots.back());
            for (std::size_t i = 0; i + 1 < pivots.size(); ++i) vs.push_back(pivots[i]);
            vs.push_back(pivots.back());
        } else if (pivots.empty()) {
            auto [a, bb] = d->src.endpoints(es[0]);
            vs = {std::min(a, bb), std::max(a, bb)};
        } else {
            vs.push_back(d->src.other_end(es.front(), pivots.front()));
            for (VertexId w : pivots) vs.push_back(w);
            vs.push_back(d->src.other_end(es.back(), pivots.back()));
        }
        Certificate out =
            make_walk_certificate(ConstraintKind::transitions, std::move(vs), std::move(es), closed);
        validate_certificate(d->src, d->sys, out);
        return out;
    };

    return {d->img, std::move(forward), std::move(backward)};
}

// ---------------------------------------------------------------------------
// Matched expansion of a transition system: each source edge becomes a matched
// pair of side vertices (2|E| vertices, |E| matched edges), each allowed
// transition a non-matching edge between the sides meeting at the pivot
// (|T| edges). Compatible closed trails become alternating cycles; open
// compatible trails become alternating paths that start and end with matched
// edges.
// ---------------------------------------------------------------------------

inline ReductionArtifact<MatchedGraph> pm_line_graph(const Graph& g, const TransitionSystem& t) {
    validate_transition_system(g, t);
    const int m = static_cast<int>(g.edge_count());
    GraphBuilder b(false);
    for (int i = 0; i < m; ++i) b.add_vertex(2 * i).add_vertex(2 * i + 1);
    for (int i = 0; i < m; ++i) b.add_edge(i, 2 * i, 2 * i + 1);
    auto side = [&g](VertexId v, EdgeId e) -> VertexId {
        auto [a, bb] = g.endpoints(e);
        return static_cast<VertexId>(2 * static_cast<int>(g.edge_index(e)) +
                                     (v == std::max(a, bb) ? 1 : 0));
    };
    std::map<std::tuple<EdgeId, EdgeId, VertexId>, EdgeId> turn_edge;
    EdgeId next = m;
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        VertexId v = g.vertex_at(i);
        const Graph& tv = t.at(g, v);
        for (EdgeId te : tv.edges()) {
            auto [e, f] = tv.endpoints(te);
            b.add_edge(next, side(v, e), side(v, f));
            turn_edge.emplace(std::make_tuple(std::min(e, f), std::max(e, f), v), next);
            ++next;
        }
    }
    std::vector<EdgeId> mm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) mm[static_cast<std::size_t>(i)] = i;

    struct Data {
        Graph src;
        TransitionSystem sys;
        MatchedGraph img;
        std::map<std::tuple<EdgeId, EdgeId, VertexId>, EdgeId> turn_edge;
        int m = 0;
    };
    auto d = std::make_shared<Data>();
    d->src = g;
    d->sys = t;
    d->img = MatchedGraph{b.build(), make_matching(std::move(mm))};
    d->turn_edge = std::move(turn_edge);
    d->m = m;

    auto decode = [d](VertexId x) -> VertexId {
        auto [a, bb] = d->src.endpoints(d->src.edge_at(static_cast<std::size_t>(x / 2)));
        return x % 2 ? std::max(a, bb) : std::min(a, bb);
    };

    auto forward = [d](const Certificate& c) -> Certificate {
        validate_certificate(d->src, d->sys, c);
        if (c.kind == WalkKind::walk) throw InputError("unsupported certificate kind: walk");
        if (c.edges.empty()) throw InputError("cannot expand a walk with no edges");
        auto side = [&](VertexId v, EdgeId e) -> VertexId {
            auto [a, bb] = d->src.endpoints(e);
            return static_cast<VertexId>(2 * static_cast<int>(d->src.edge_index(e)) +
                                         (v == std::max(a, bb) ? 1 : 0));
        };
        auto turn = [&](EdgeId e, EdgeId f, VertexId pivot) -> EdgeId {
            return d->turn_edge.at(std::make_tuple(std::min(e, f), std::max(e, f), pivot));
        };
        bool closed = is_closed(c.kind);
        std::vector<VertexId> vs;
        std::vector<EdgeId> es;
        const std::size_t k = c.edges.size();
        vs.push_back(side(c.vertices[0], c.edges[0]));
        for (std::size_t i = 0; i < k; ++i) {
            es.push_back(static_cast<EdgeId>(d->src.edge_index(c.edges[i])));
            vs.push_back(side(c.vertices[i + 1], c.edges[i]));
            if (i + 1 < k) {
                es.push_back(turn(c.edges[i], c.edges[i + 1], c.vertices[i + 1]));
                vs.push_back(side(c.vertices[i + 1], c.edges[i + 1]));
            } else if (closed) {
                es.push_back(turn(c.edges[k - 1], c.edges[0], c.vertices[0]));
                vs.push_back(side(c.vertices[0], c.edges[0]));
            }
        }
        Certificate out = make_walk_certificate(ConstraintKind::alternating, std::move(vs),
                                                std::move(es), closed);
        validate_certificate(d->img.graph, d->img.matching, out);
        return out;
    };

    auto backward = [d, decode](const Certificate& c) -> Certificate {
        validate_certificate(d->img.graph, d->img.matching, c);
        if (c.kind == WalkKind::walk) throw InputError("unsupported certificate kind: walk");
        Certificate cc = c;
        if (is_closed(c.kind)) {
            std::size_t r = 0;
            while (r < cc.edges.size() && cc.edges[r] >= d->m) ++r;
            if (r == cc.edges.size()) throw InputError("alternating cycle never crosses a matched pair");
            cc = detail::rotate_closed(cc, r);
        } else {
            if (cc.edges.empty() || cc.edges.front() >= d->m || cc.edges.back() >= d->m)
                throw InputError("expected an alternating walk starting and ending on matched pair edges");
        }
        std::vector<EdgeId> es;
        for (std::size_t i = 0; i < cc.edges.size(); ++i) {
            bool matched = cc.edges[i] < d->m;
            if (matched != (i % 2 == 0))
                throw InputError("expected matched pair edges at even walk positions");
            if (matched) es.push_back(d->src.edge_at(static_cast<std::size_t>(cc.edges[i])));
        }
        std::vector<VertexId> raw;
        for (VertexId x : cc.vertices) raw.push_back(decode(x));
        std::vector<VertexId> vs = detail::collapse_consecutive(raw);
        if (is_closed(c.kind) && vs.front() != vs.back()) vs.push_back(vs.front());
        Certificate out = make_walk_certificate(ConstraintKind::transitions, std::move(vs),
                                                std::move(es), is_closed(c.kind));
        validate_certificate(d->src, d->sys, out);
        return out;
    };

    return {d->img, std::move(forward), std::move(backward)};
}

// ---------------------------------------------------------------------------
// Locally 2-colored graphs <-> matched graphs. Expansion: vertex u becomes a
// matched side pair (u_R, u_B), each edge attaches to the side it uses at each
// endpoint. Compatible paths/cycles correspond to alternating paths (matched
// edges first and last) / alternating cycles. Contraction is the inverse:
// collapse each matched edge of a perfectly matched graph to one vertex, label
// attachment sides by which endpoint the edge used.
// ---------------------------------------------------------------------------

inline ReductionArtifact<MatchedGraph> to_matched_graph(const LocallyTwoColoredGraph& l) {
    validate_local2(l);
    const Graph& G = l.graph;
    const int n = static_cast<int>(G.vertex_count());
    GraphBuilder b(false);
    for (int i = 0; i < n; ++i) b.add_vertex(2 * i).add_vertex(2 * i + 1);
    for (int i = 0; i < n; ++i) b.add_edge(i, 2 * i, 2 * i + 1);
    auto sv = [&G](VertexId u, Side s) -> VertexId {
        return static_cast<VertexId>(2 * static_cast<int>(G.vertex_index(u)) +
                                     (s == Side::B ? 1 : 0));
    };
    for (EdgeId e : G.edges()) {
        auto [x, y] = G.endpoints(e);
        b.add_edge(n + static_cast<EdgeId>(G.edge_index(e)), sv(x, l.side_at(e, x)),
                   sv(y, l.side_at(e, y)));
    }
    std::vector<EdgeId> mm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) mm[static_cast<std::size_t>(i)] = i;

    struct Data {
        LocallyTwoColoredGraph src;
        MatchedGraph img;
        int n = 0;
    };
    auto d = std::make_shared<Data>();
    d->src = l;
    d->img = MatchedGraph{b.build(), make_matching(std::move(mm))};
    d->n = n;

    auto forward = [d](const Certificate& c) -> Certificate {
        validate_certificate(d->src, c);
        if (c.kind != WalkKind::path && c.kind != WalkKind::cycle)
            throw InputError("only vertex-simple walks expand; a revisit would reuse a matched edge");
        const Graph& G = d->src.graph;
        auto sv = [&](VertexId u, Side s) -> VertexId {
            return static_cast<VertexId>(2 * static_cast<int>(G.vertex_index(u)) +
                                         (s == Side::B ? 1 : 0));
        };
        auto other = [](Side s) { return s == Side::R ? Side::B : Side::R; };
        auto mid = [&](VertexId u) -> EdgeId { return static_cast<EdgeId>(G.vertex_index(u)); };
        auto eid = [&](EdgeId e) -> EdgeId {
            return d->n + static_cast<EdgeId>(G.edge_index(e));
        };
        std::vector<VertexId> vs;
        std::vector<EdgeId> es;
        const std::size_t k = c.edges.size();
        if (c.kind == WalkKind::path) {
            if (k == 0) {
                VertexId u = c.vertices[0];
                vs = {sv(u, Side::R), sv(u, Side::B)};
                es = {mid(u)};
            } else {
                Side s0 = d->src.side_at(c.edges[0], c.vertices[0]);
                vs.push_back(sv(c.vertices[0], other(s0)));
                vs.push_back(sv(c.vertices[0], s0));
                es.push_back(mid(c.vertices[0]));
                for (std::size_t i = 0; i < k; ++i) {
                    es.push_back(eid(c.edges[i]));
                    Side arrive = d->src.side_at(c.edges[i], c.vertices[i + 1]);
                    vs.push_back(sv(c.vertices[i + 1], arrive));
                    es.push_back(mid(c.vertices[i + 1]));
                    vs.push_back(sv(c.vertices[i + 1], other(arrive)));
                }
            }
        } else {
            vs.push_back(sv(c.vertices[0], d->src.side_at(c.edges[0], c.vertices[0])));
            for (std::size_t i = 0; i < k; ++i) {
                es.push_back(eid(c.edges[i]));
                Side arrive = d->src.side_at(c.edges[i], c.vertices[i + 1]);
                vs.push_back(sv(c.vertices[i + 1], arrive));
                es.push_back(mid(c.vertices[i + 1]));
                vs.push_back(i + 1 < k ? sv(c.vertices[i + 1],
                                            d->src.side_at(c.edges[i + 1], c.vertices[i + 1]))
                                       : vs.front());
            }
        }
        Certificate out = make_walk_certificate(ConstraintKind::alternating, std::move(vs),
                                                std::move(es), c.kind == WalkKind::cycle);
        validate_certificate(d->img.graph, d->img.matching, out);
        return out;
    };

    auto backward = [d](const Certificate& c) -> Certificate {
        validate_certificate(d->img.graph, d->img.matching, c);
        if (c.kind == WalkKind::walk) throw InputError("unsupported certificate kind: walk");
        const Graph& G = d->src.graph;
        Certificate cc = c;
        bool closed = is_closed(c.kind);
        if (closed) {
            std::size_t r = 0;
            while (r < cc.edges.size() && cc.edges[r] < d->n) ++r;
            if (r == cc.edges.size())
                throw InputError("alternating cycle uses no expanded edges");
            cc = detail::rotate_closed(cc, r);
        } else {
            if (cc.edges.empty() || cc.edges.front() >= d->n || cc.edges.back() >= d->n)
                throw InputError("expected an alternating walk starting and ending on matched edges");
        }
        std::vector<EdgeId> es;
        for (std::size_t i = 0; i < cc.edges.size(); ++i) {
            bool expanded = cc.edges[i] >= d->n;
            if (expanded != (closed ? i % 2 == 0 : i % 2 == 1))
                throw InputError("matched and expanded edges must strictly alternate");
            if (expanded) es.push_back(G.edge_at(static_cast<std::size_t>(cc.edges[i] - d->n)));
        }
        std::vector<VertexId> raw;
        for (VertexId x : cc.vertices) raw.push_back(G.vertex_at(static_cast<std::size_t>(x / 2)));
        std::vector<VertexId> vs = detail::collapse_consecutive(raw);
        if (closed && vs.front() != vs.back()) vs.push_back(vs.front());
        Certificate out = make_walk_certificate(ConstraintKind::locally_two_colored, std::move(vs),
                                                std::move(es), closed);
        validate_certificate(d->src, out);
        return out;
    };

    return {d->img, std::move(forward), std::move(backward)};
}

// Inverse expansion: contract every matched edge of a perfectly matched graph.
// The side a contracted edge attaches to records which endpoint it used (R for
// the smaller endpoint of the matched edge, B for the larger).
inline LocallyTwoColoredGraph from_matched_graph(const MatchedGraph& mg) {
    validate_matching(mg.graph, mg.matching);
    if (!is_perfect_matching(mg.graph, mg.matching))
        throw PreconditionError("contraction requires a perfect matching");
    const Graph& G = mg.graph;
    const auto& M = mg.matching.edges;  // ascending
    std::vector<int> pair_of(G.vertex_count(), -1);
    std::vector<Side> side_of(G.vertex_count(), Side::R);
    for (std::size_t i = 0; i < M.size(); ++i) {
        auto [a, bb] = G.endpoints(M[i]);
        pair_of[G.vertex_index(std::min(a, bb))] = static_cast<int>(i);
        pair_of[G.vertex_index(std::max(a, bb))] = static_cast<int>(i);
        side_of[G.vertex_index(std::max(a, bb))] = Side::B;
    }
    GraphBuilder b(true);
    for (std::size_t i = 0; i < M.size(); ++i) b.add_vertex(static_cast<VertexId>(i));
    std::vector<std::pair<Side, Side>> sides;
    EdgeId next = 0;
    for (EdgeId e : G.edges()) {
        if (std::binary_search(M.begin(), M.end(), e)) continue;
        auto [x, y] = G.endpoints(e);
        b.add_edge(next, pair_of[G.vertex_index(x)], pair_of[G.vertex_index(y)]);
        sides.emplace_back(side_of[G.vertex_index(x)], side_of[G.vertex_index(y)]);
        ++next;
    }
    return locally_two_colored(b.build(), std::move(sides));
}

// Orientation as local 2-coloring: each arc becomes an edge leaving on side R
// and arriving on side B, so compatible walks are exactly directed walks. A
// digon becomes two parallel edges with opposite side patterns, which is
// legal; same-direction parallel arcs are not locally 2-colorable and are
// rejected.
inline LocallyTwoColoredGraph digraph_to_local2(const Digraph& d) {
    GraphBuilder b(true);
    for (VertexId v : d.vertices()) b.add_vertex(v);
    std::vector<std::pair<Side, Side>> sides;
    for (ArcId a : d.arcs()) {
        b.add_edge(a, d.tail(a), d.head(a));
        sides.emplace_back(Side::R, Side::B);
    }
    return locally_two_colored(b.build(), std::move(sides));
}

// ---------------------------------------------------------------------------
// Star reduction for rainbow problems on complete-multipartite color classes:
// class i (with parts H_1..H_r) becomes a fresh hub w_i; every vertex covered
// by the class attaches to w_i, colored by its part (part colors are globally
// distinct across classes). Rainbow walks correspond to properly colored
// walks through the hubs.
// ---------------------------------------------------------------------------

inline ReductionArtifact<EdgeColoredGraph> rainbow_star_reduction(const EdgeColoredGraph& g) {
    validate_edge_colored(g);
    if (g.graph.allows_parallel()) {
        std::set<std::pair<VertexId, VertexId>> seen;
        for (EdgeId e : g.graph.edges()) {
            auto [u, v] = g.graph.endpoints(e);
            if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
                throw InputError("parallel edges do not star-reduce deterministically");
        }
    }
    struct ClassInfo {
        ColorId color;
        VertexId hub;
        int parts = 0;
        std::map<VertexId, int> part_of;
    };
    auto classes = color_classes(g);
    const VertexId base = g.graph.max_vertex_id() + 1;
    std::vector<ClassInfo> infos;
    std::map<EdgeId, int> class_of;
    for (const auto& [color, edges] : classes) {
        std::set<VertexId> covered;
        for (EdgeId e : edges) {
            auto [u, v] = g.graph.endpoints(e);
            covered.insert(u);
            covered.insert(v);
        }
        GraphBuilder cb(g.graph.allows_parallel());
        for (VertexId v : covered) cb.add_vertex(v);
        for (EdgeId e : edges) {
            auto [u, v] = g.graph.endpoints(e);
            cb.add_edge(e, u, v);
        }
        auto parts = complete_multipartite_partition(cb.build());
        if (!parts)
            throw PreconditionError("color class " + std::to_string(color) +
                                    " is not complete multipartite");
        ClassInfo ci;
        ci.color = color;
        ci.hub = base + static_cast<VertexId>(infos.size());
        ci.parts = static_cast<int>(parts->size());
        for (int pi = 0; pi < ci.parts; ++pi)
            for (VertexId v : (*parts)[static_cast<std::size_t>(pi)]) ci.part_of[v] = pi;
        for (EdgeId e : edges) class_of[e] = static_cast<int>(infos.size());
        infos.push_back(std::move(ci));
    }
    GraphBuilder ib(false);
    for (VertexId v : g.graph.vertices()) ib.add_vertex(v);
    for (const auto& ci : infos) ib.add_vertex(ci.hub);
    std::vector<ColorId> icolors;
    std::map<std::pair<VertexId, int>, EdgeId> attach;
    EdgeId next = 0;
    int offset = 0;
    for (std::size_t i = 0; i < infos.size(); ++i) {
        for (const auto& [v, pi] : infos[i].part_of) {
            ib.add_edge(next, v, infos[i].hub);
            icolors.push_back(offset + pi);
            attach[{v, static_cast<int>(i)}] = next;
            ++next;
        }
        offset += infos[i].parts;
    }
    struct Data {
        EdgeColoredGraph src;
        EdgeColoredGraph img;
        VertexId base = 0;
        std::map<std::pair<VertexId, int>, EdgeId> attach;
        std::map<EdgeId, int> class_of;
        std::map<std::tuple<VertexId, VertexId, int>, EdgeId> edge_lookup;
    };
    auto d = std::make_shared<Data>();
    d->src = g;
    d->img = edge_colored(ib.build(), std::move(icolors));
    d->base = base;
    d->attach = std::move(attach);
    d->class_of = std::move(class_of);
    for (EdgeId e : g.graph.edges()) {
        auto [u, v] = g.graph.endpoints(e);
        d->edge_lookup[{std::min(u, v), std::max(u, v), d->class_of.at(e)}] = e;
    }

    auto forward = [d](const Certificate& c) -> Certificate {
        if (c.constraint != ConstraintKind::rainbow)
            throw InputError("expected a rainbow certificate");
        validate_certificate(d->src, c);
        if (c.kind == WalkKind::walk) throw InputError("unsupported certificate kind: walk");
        bool closed = is_closed(c.kind);
        std::vector<VertexId> vs{c.vertices[0]};
        std::vector<EdgeId> es;
        for (std::size_t i = 0; i < c.edges.size(); ++i) {
            int cls = d->class_of.at(c.edges[i]);
            es.push_back(d->attach.at({c.vertices[i], cls}));
            es.push_back(d->attach.at({c.vertices[i + 1], cls}));
            vs.push_back(d->base + cls);
            vs.push_back(c.vertices[i + 1]);
        }
        Certificate out = make_walk_certificate(ConstraintKind::properly_colored, std::move(vs),
                                                std::move(es), closed);
        validate_certificate(d->img, out);
        return out;
    };

    auto backward = [d](const Certificate& c) -> Certificate {
        validate_certificate(d->img, c);
        if (c.kind == WalkKind::walk) throw InputError("unsupported certificate kind: walk");
        bool closed = is_closed(c.kind);
        if (c.edges.size() % 2 != 0 || c.vertices.front() >= d->base || c.vertices.back() >= d->base)
            throw InputError("image walk must start and end at original vertices");
        std::vector<VertexId> vs;
        std::vector<EdgeId> es;
        for (std::size_t i = 0; i < c.vertices.size(); ++i) {
            bool hub = c.vertices[i] >= d->base;
            if (hub != (i % 2 == 1))
                throw InputError("image walk must alternate original vertices and class hubs");
            if (!hub) vs.push_back(c.vertices[i]);
        }
        for (std::size_t i = 0; i + 1 < c.vertices.size(); i += 2) {
            int cls = c.vertices[i + 1] - d->base;
            VertexId a = c.vertices[i], b = c.vertices[i + 2];
            auto it = d->edge_lookup.find({std::min(a, b), std::max(a, b), cls});
            if (it == d->edge_lookup.end())
                throw InputError("image walk does not project to an edge of the original graph");
            es.push_back(it->second);
        }
        Certificate out =
            make_walk_certificate(ConstraintKind::rainbow, std::move(vs), std::move(es), closed);
        validate_certificate(d->src, out);
        return out;
    };

    return {d->img, std::move(forward), std::move(backward)};
}

// ---------------------------------------------------------------------------
// Vertex-gadget expansion of an edge-colored graph into a matched graph: each
// non-isolated vertex gets a terminal gadget over its incident colors, each
// edge a cross edge between same-color terminals (cross edge id = source edge
// index). The gadget matching is the unique perfect matching of the image iff
// the source has no properly colored cycle; alternating cycles correspond to
// properly colored cycles. Endpoint gadgets may carry a phantom terminal with
// an exposed pendant, which turns properly colored path search into
// augmenting path search.
// ---------------------------------------------------------------------------

namespace detail {

inline constexpr ColorId kPhantomColor = -1;

struct PcImage {
    Graph graph;
    std::vector<EdgeId> matching;  // ascending gadget-edge ids
    int cross_count = 0;           // cross edge ids are 0..cross_count-1 = source edge indices

    struct VertexGadget {
        VertexId v = -1;
        int kind = 0;  // 1 pendant, 2 single edge, 3 hubs
        std::map<ColorId, VertexId> term;
        std::map<ColorId, VertexId> partner;   // kind 3
        std::map<ColorId, EdgeId> term_edge;   // matched edge at each terminal
        VertexId hub_a = -1, hub_b = -1;
        EdgeId hub_edge = -1;
        std::map<ColorId, EdgeId> to_a, to_b;  // kind 3 connectors
    };
    std::map<VertexId, VertexGadget> gadgets;
    std::map<std::pair<VertexId, ColorId>, VertexId> terminal;
    std::map<VertexId, std::pair<VertexId, ColorId>> terminal_of;
    std::vector<VertexId> dropped;  // isolated source vertices (no gadget)
    VertexId rho_s = -1, rho_t = -1;
};

inline PcImage build_pc_image(const EdgeColoredGraph& g, std::optional<VertexId> phantom_s,
                              std::optional<VertexId> phantom_t) {
    validate_edge_colored(g);
    if (phantom_s && phantom_t && *phantom_s == *phantom_t)
        throw Error("phantom endpoints must be distinct");
    const Graph& G = g.graph;
    const int m = static_cast<int>(G.edge_count());
    PcImage out;
    out.cross_count = m;
    GraphBuilder b(false);
    VertexId next_v = G.max_vertex_id() + 1;
    EdgeId next_e = m;
    for (std::size_t i = 0; i < G.vertex_count(); ++i) {
        VertexId v = G.vertex_at(i);
        std::set<ColorId> cs;
        for (EdgeId e : G.incident(v)) cs.insert(g.color_of(e));
        bool phantom = (phantom_s && *phantom_s == v) || (phantom_t && *phantom_t == v);
        if (cs.empty() && !phantom) {
            out.dropped.push_back(v);
            continue;
        }
        std::vector<ColorId> terms(cs.begin(), cs.end());
        if (phantom) terms.insert(terms.begin(), kPhantomColor);
        PcImage::VertexGadget vg;
        vg.v = v;
        for (ColorId c : terms) {
            b.add_vertex(next_v);
            vg.term[c] = next_v;
            out.terminal[{v, c}] = next_v;
            out.terminal_of[next_v] = {v, c};
            ++next_v;
        }
        const int k = static_cast<int>(terms.size());
        if (k == 1) {
            vg.kind = 1;
            b.add_vertex(next_v);
            b.add_edge(next_e, vg.term[terms[0]], next_v);
            out.matching.push_back(next_e);
            vg.term_edge[terms[0]] = next_e;
            ++next_v;
            ++next_e;
        } else if (k == 2) {
            vg.kind = 2;
            b.add_edge(next_e, vg.term[terms[0]], vg.term[terms[1]]);
            out.matching.push_back(next_e);
            vg.term_edge[terms[0]] = vg.term_edge[terms[1]] = next_e;
            ++next_e;
        } else {
            vg.kind = 3;
            for (ColorId c : terms) {
                b.add_vertex(next_v);
                vg.partner[c] = next_v;
                ++next_v;
            }
            vg.hub_a = next_v++;
            vg.hub_b = next_v++;
            b.add_vertex(vg.hub_a).add_vertex(vg.hub_b);
            for (ColorId c : terms) {
                b.add_edge(next_e, vg.term[c], vg.partner[c]);
                out.matching.push_back(next_e);
                vg.term_edge[c] = next_e;
                ++next_e;
            }
            b.add_edge(next_e, vg.hub_a, vg.hub_b);
            out.matching.push_back(next_e);
            vg.hub_edge = next_e;
            ++next_e;
            for (ColorId c : terms) {
                b.add_edge(next_e, vg.partner[c], vg.hub_a);
                vg.to_a[c] = next_e;
                ++next_e;
                b.add_edge(next_e, vg.partner[c], vg.hub_b);
                vg.to_b[c] = next_e;
                ++next_e;
            }
        }
        if (phantom) {
            b.add_vertex(next_v);
            b.add_edge(next_e, vg.term[kPhantomColor], next_v);  // exposed pendant
            (phantom_s && *phantom_s == v ? out.rho_s : out.rho_t) = next_v;
            ++next_v;
            ++next_e;
        }
        out.gadgets.emplace(v, std::move(vg));
    }
    for (EdgeId e : G.edges()) {
        auto [u, v] = G.endpoints(e);
        ColorId c = g.color_of(e);
        b.add_edge(static_cast<EdgeId>(G.edge_index(e)), out.terminal.at({u, c}),
                   out.terminal.at({v, c}));
    }
    out.graph = b.build();
    return out;
}

// Appends the canonical alternating in-gadget route from the terminal of
// color c (already the last vertex of vs) to the terminal of color cp. The
// route starts and ends with matched edges.
inline void append_connector(const PcImage::VertexGadget& vg, ColorId c, ColorId cp,
                             std::vector<VertexId>& vs, std::vector<EdgeId>& es) {
    if (vg.kind == 2) {
        es.push_back(vg.term_edge.at(c));
        vs.push_back(vg.term.at(cp));
        return;
    }
    es.push_back(vg.term_edge.at(c));
    vs.push_back(vg.partner.at(c));
    es.push_back(vg.to_a.at(c));
    vs.push_back(vg.hub_a);
    es.push_back(vg.hub_edge);
    vs.push_back(vg.hub_b);
    es.push_back(vg.to_b.at(cp));
    vs.push_back(vg.partner.at(cp));
    es.push_back(vg.term_edge.at(cp));
    vs.push_back(vg.term.at(cp));
}

}  // namespace detail

inline ReductionArtifact<MatchedGraph> pc_gadget_graph(const EdgeColoredGraph& g) {
    auto im = std::make_shared<const detail::PcImage>(
        detail::build_pc_image(g, std::nullopt, std::nullopt));
    auto src = std::make_shared<const EdgeColoredGraph>(g);
    auto inst = std::make_shared<const MatchedGraph>(
        MatchedGraph{im->graph, make_matching(im->matching)});

    auto forward = [im, src, inst](const Certificate& c) -> Certificate {
        if (c.constraint != ConstraintKind::properly_colored)
            throw InputError("expected a properly colored certificate");
        validate_certificate(*src, c);
        if (c.kind != WalkKind::cycle)
            throw InputError("only vertex-simple cycles expand to alternating cycles");
        const std::size_t k = c.edges.size();
        std::vector<VertexId> vs;
        std::vector<EdgeId> es;
        vs.push_back(im->terminal.at({c.vertices[0], src->color_of(c.edges[0])}));
        for (std::size_t l = 0; l < k; ++l) {
            ColorId ce = src->color_of(c.edges[l]);
            ColorId cn = src->color_of(c.edges[(l + 1) % k]);
            es.push_back(static_cast<EdgeId>(src->graph.edge_index(c.edges[l])));
            VertexId arrive = c.vertices[l + 1];
            vs.push_back(im->terminal.at({arrive, ce}));
            detail::append_connector(im->gadgets.at(arrive), ce, cn, vs, es);
        }
        Certificate out =
            make_walk_certificate(ConstraintKind::alternating, std::move(vs), std::move(es), true);
        validate_certificate(inst->graph, inst->matching, out);
        return out;
    };

    auto backward = [im, src, inst](const Certificate& c) -> Certificate {
        validate_certificate(inst->graph, inst->matching, c);
        if (!is_closed(c.kind)) throw InputError("expected an alternating cycle");
        std::size_t r = 0;
        while (r < c.edges.size() && c.edges[r] >= im->cross_count) ++r;
        if (r == c.edges.size())
            throw InputError("alternating cycle stays inside one gadget and does not project");
        Certificate cc = detail::rotate_closed(c, r);
        std::vector<VertexId> vs;
        std::vector<EdgeId> es;
        vs.push_back(im->terminal_of.at(cc.vertices[0]).first);
        for (std::size_t p = 0; p < cc.edges.size(); ++p) {
            if (cc.edges[p] >= im->cross_count) continue;
            es.push_back(src->graph.edge_at(static_cast<std::size_t>(cc.edges[p])));
            vs.push_back(im->terminal_of.at(cc.vertices[p + 1]).first);
        }
        Certificate out = make_walk_certificate(ConstraintKind::properly_colored, std::move(vs),
                                                std::move(es), true);
        validate_certificate(*src, out);
        return out;
    };

    return {*inst, std::move(forward), std::move(backward)};
}

// ---------------------------------------------------------------------------
// Hardness transformers.
// ---------------------------------------------------------------------------

// Replaces every color class of g (each a single edge or two disjoint edges)
// with a fresh monochromatic copy of `gamma`, glued along gamma's four
// distinguished vertices `w` (which must induce two disjoint edges in gamma).
// A two-edge class receives the copy with the first w-pair glued to its first
// edge and the second to its second; a one-edge class glues only the first
// pair and the second gets fresh dead-end vertices. Rainbow path existence
// between original vertices is preserved: a rainbow walk uses at most one
// edge per monochromatic copy, and inside a copy only the glued pairs connect
// back to the rest of the graph.
inline EdgeColoredGraph replace_color_classes_with_gadget(const EdgeColoredGraph& g,
                                                          const Graph& gamma,
                                                          const std::vector<VertexId>& w) {
    validate_edge_colored(g);
    if (w.size() != 4) throw InputError("expected exactly four glue vertices");
    std::set<VertexId> wset(w.begin(), w.end());
    if (wset.size() != 4) throw InputError("glue vertices must be distinct");
    for (VertexId x : w)
        if (!gamma.has_vertex(x))
            throw InputError("glue vertex " + std::to_string(x) + " is not in the gadget");
    std::vector<EdgeId> induced;
    for (EdgeId e : gamma.edges()) {
        auto [a, bb] = gamma.endpoints(e);
        if (wset.count(a) && wset.count(bb)) induced.push_back(e);
    }
    if (induced.size() != 2)
        throw PreconditionError("glue vertices must induce exactly two gadget edges");
    auto [p1a, p1b] = gamma.endpoints(induced[0]);
    auto [p2a, p2b] = gamma.endpoints(induced[1]);
    {
        std::set<VertexId> cover{p1a, p1b, p2a, p2b};
        if (cover.size() != 4)
            throw PreconditionError("glue vertices must induce two disjoint gadget edges");
    }
    std::pair<VertexId, VertexId> pair1{std::min(p1a, p1b), std::max(p1a, p1b)};
    std::pair<VertexId, VertexId> pair2{std::min(p2a, p2b), std::max(p2a, p2b)};

    auto classes = color_classes(g);
    GraphBuilder b(true);
    for (VertexId v : g.graph.vertices()) b.add_vertex(v);
    std::vector<ColorId> colors;
    VertexId fresh = g.graph.max_vertex_id() + 1;
    EdgeId next = 0;
    for (const auto& [color, edges] : classes) {
        std::map<VertexId, VertexId> to_image;
        if (edges.size() == 1) {
            auto [u, v] = g.graph.endpoints(edges[0]);
            to_image[pair1.first] = std::min(u, v);
            to_image[pair1.second] = std::max(u, v);
            to_image[pair2.first] = fresh;
            to_image[pair2.second] = fresh + 1;
            b.add_vertex(fresh).add_vertex(fresh + 1);
            fresh += 2;
        } else if (edges.size() == 2) {
            auto [u1, v1] = g.graph.endpoints(edges[0]);
            auto [u2, v2] = g.graph.endpoints(edges[1]);
            std::set<VertexId> cover{u1, v1, u2, v2};
            if (cover.size() != 4)
                throw PreconditionError("color class " + std::to_string(color) +
                                        " must be two disjoint edges");
            to_image[pair1.first] = std::min(u1, v1);
            to_image[pair1.second] = std::max(u1, v1);
            to_image[pair2.first] = std::min(u2, v2);
            to_image[pair2.second] = std::max(u2, v2);
        } else {
            throw PreconditionError("color class " + std::to_string(color) +
                                    " must be one edge or two disjoint edges");
        }
        for (VertexId x : gamma.vertices()) {
            if (to_image.count(x)) continue;
            to_image[x] = fresh;
            b.add_vertex(fresh);
            ++fresh;
        }
        for (EdgeId e : gamma.edges()) {
            auto [x, y] = gamma.endpoints(e);
            b.add_edge(next, to_image.at(x), to_image.at(y));
            colors.push_back(color);
            ++next;
        }
    }
    return edge_colored(b.build(), std::move(colors));
}

// Doubles each vertex of a 2-arc-colored digraph into a low/high copy joined
// by a matched digon; each arc runs between the copies at its color's level.
// Properly colored closed walks that never repeat a vertex correspond to
// alternating closed walks of the image, because switching color at a pivot
// is exactly crossing its digon.
inline ReductionArtifact<MatchedDigraph> arc_colored_to_matched_digraph(
    const ArcColoredDigraph& d) {
    validate_arc_colored(d);
    std::set<ColorId> palette(d.colors.begin(), d.colors.end());
    if (palette.size() > 2) throw PreconditionError("expected at most two arc colors");
    const ColorId lo = palette.empty() ? 0 : *palette.begin();
    const Digraph& D = d.graph;
    const int n = static_cast<int>(D.vertex_count());
    DigraphBuilder b(false);
    for (int i = 0; i < n; ++i) b.add_vertex(2 * i).add_vertex(2 * i + 1);
    for (int i = 0; i < n; ++i) {
        b.add_arc(2 * i, 2 * i, 2 * i + 1);
        b.add_arc(2 * i + 1, 2 * i + 1, 2 * i);
    }
    auto level = [lo](ColorId c) { return c == lo ? 0 : 1; };
    auto copy_at = [&D](VertexId v, int lv) -> VertexId {
        return static_cast<VertexId>(2 * static_cast<int>(D.vertex_index(v)) + lv);
    };
    for (ArcId a : D.arcs())
        b.add_arc(2 * n + static_cast<ArcId>(D.arc_index(a)),
                  copy_at(D.tail(a), level(d.color_of(a))),
                  copy_at(D.head(a), level(d.color_of(a))));
    std::vector<ArcId> mm(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i) mm[static_cast<std::size_t>(i)] = i;

    struct Data {
        ArcColoredDigraph src;
        MatchedDigraph img;
        int n = 0;
        ColorId lo = 0;
    };
    auto dd = std::make_shared<Data>();
    dd->src = d;
    dd->img = matched_digraph(b.build(), std::move(mm));
    dd->n = n;
    dd->lo = lo;

    auto forward = [dd](const Certificate& c) -> Certificate {
        validate_certificate(dd->src, c);
        if (c.kind != WalkKind::cycle && c.kind != WalkKind::path)
            throw InputError("only vertex-simple directed walks double");
        const Digraph& D = dd->src.graph;
        auto level = [&](ArcId a) { return dd->src.color_of(a) == dd->lo ? 0 : 1; };
        auto copy_at = [&](VertexId v, int lv) -> VertexId {
            return static_cast<VertexId>(2 * static_cast<int>(D.vertex_index(v)) + lv);
        };
        auto digon = [&](VertexId v, int from_lv) -> ArcId {
            return static_cast<ArcId>(2 * static_cast<int>(D.vertex_index(v)) + from_lv);
        };
        std::vector<VertexId> vs;
        std::vector<EdgeId> es;
        const std::size_t r = c.edges.size();
        if (r == 0) {
            vs = {copy_at(c.vertices[0], 0)};
        } else {
            vs.push_back(copy_at(c.vertices[0], level(c.edges[0])));
            for (std::size_t l = 0; l < r; ++l) {
                int lv = level(c.edges[l]);
                es.push_back(2 * dd->n + static_cast<ArcId>(D.arc_index(c.edges[l])));
                vs.push_back(copy_at(c.vertices[l + 1], lv));
                bool last = l + 1 == r;
                if (last && c.kind != WalkKind::cycle) break;
                int nlv = level(c.edges[last ? 0 : l + 1]);
                if (nlv != lv) {
                    es.push_back(digon(c.vertices[l + 1], lv));
                    vs.push_back(copy_at(c.vertices[l + 1], nlv));
                }
            }
        }
        Certificate out = make_walk_certificate(ConstraintKind::alternating_directed,
                                                std::move(vs), std::move(es),
                                                c.kind == WalkKind::cycle);
        validate_certificate(dd->img, out);
        return out;
    };

    auto backward = [dd](const Certificate& c) -> Certificate {
        validate_certificate(dd->img, c);
        if (c.kind == WalkKind::walk) throw InputError("unsupported certificate kind: walk");
        const Digraph& D = dd->src.graph;
        std::vector<EdgeId> es;
        for (EdgeId a : c.edges)
            if (a >= 2 * dd->n) es.push_back(D.arc_at(static_cast<std::size_t>(a - 2 * dd->n)));
        bool closed = is_closed(c.kind);
        std::vector<VertexId> vs;
        if (es.empty()) {
            if (closed) throw InputError("alternating closed walk never leaves a digon");
            vs = {D.vertex_at(static_cast<std::size_t>(c.vertices[0] / 2))};
        } else {
            for (EdgeId a : es) vs.push_back(D.tail(a));
            vs.push_back(closed ? vs.front() : D.head(es.back()));
        }
        Certificate out = make_walk_certificate(ConstraintKind::pc_directed, std::move(vs),
                                                std::move(es), closed);
        validate_certificate(dd->src, out);
        return out;
    };

    return {dd->img, std::move(forward), std::move(backward)};
}

namespace detail {

// Exhaustive search for a properly colored circuit (vertex-simple directed
// cycle, length >= 2, color changing at every pivot including the seam).
// Canonicalized by smallest start index; intended for small instances only.
inline bool has_pc_circuit(const ArcColoredDigraph& d) {
    const Digraph& D = d.graph;
    const std::size_t n = D.vertex_count();
    for (std::size_t si = 0; si < n; ++si) {
        VertexId sv = D.vertex_at(si);
        std::vector<char> on(n, 0);
        ColorId first = 0;
        std::function<bool(VertexId, ColorId)> go = [&](VertexId cur, ColorId last) -> bool {
            for (ArcId a : D.out(cur)) {
                ColorId c = d.color_of(a);
                if (c == last) continue;
                VertexId h = D.head(a);
                if (h == sv) {
                    if (c != first) return true;
                    continue;
                }
                std::size_t hi = D.vertex_index(h);
                if (hi <= si || on[hi]) continue;
                on[hi] = 1;
                bool found = go(h, c);
                on[hi] = 0;
                if (found) return true;
            }
            return false;
        };
        for (ArcId a0 : D.out(sv)) {
            VertexId h = D.head(a0);
            std::size_t hi = D.vertex_index(h);
            if (hi <= si) continue;
            first = d.color_of(a0);
            on[hi] = 1;
            bool found = go(h, first);
            on[hi] = 0;
            if (found) return true;
        }
    }
    return false;
}

}  // namespace detail

// Turns "is there a properly colored s-t path" into "is there a properly
// colored circuit" on a circuit-free 2-arc-colored digraph: for every
// (end color, start color) pair a fresh return route from t to s is added
// whose border colors make the splice properly colored. Equal-color pairs
// need a length-3 route to keep the route itself properly colored; unequal
// pairs use length 2. The precondition (no properly colored circuit in d) is
// checked exhaustively unless `trusted` is set; the check is guarded to small
// instances.
inline ArcColoredDigraph pc_path_to_pc_circuit(const ArcColoredDigraph& d, VertexId s, VertexId t,
                                               bool trusted = false) {
    validate_arc_colored(d);
    if (!d.graph.has_vertex(s)) throw InputError("unknown vertex id " + std::to_string(s));
    if (!d.graph.has_vertex(t)) throw InputError("unknown vertex id " + std::to_string(t));
    std::set<ColorId> palette(d.colors.begin(), d.colors.end());
    if (palette.size() > 2) throw PreconditionError("expected at most two arc colors");
    const ColorId lo = palette.empty() ? 0 : *palette.begin();
    const ColorId hi = palette.size() == 2 ? *std::next(palette.begin()) : lo + 1;
    if (!trusted) {
        if (d.graph.vertex_count() > 10 || d.graph.arc_count() > 24)
            throw GuardError(
                "circuit-freeness is checked exhaustively; pass trusted=true past 10 vertices / 24 arcs");
        if (detail::has_pc_circuit(d))
            throw PreconditionError("digraph already has a properly colored circuit");
    }
    DigraphBuilder b(d.graph.allows_parallel());
    for (VertexId v : d.graph.vertices()) b.add_vertex(v);
    for (ArcId a : d.graph.arcs()) b.add_arc(a, d.graph.tail(a), d.graph.head(a));
    std::vector<ColorId> colors = d.colors;
    auto other = [lo, hi](ColorId c) { return c == lo ? hi : lo; };
    VertexId nv = d.graph.max_vertex_id() + 1;
    ArcId na = d.graph.max_arc_id() + 1;
    for (ColorId end_color : {lo, hi}) {
        for (ColorId start_color : {lo, hi}) {
            if (end_color != start_color) {
                b.add_vertex(nv);
                b.add_arc(na, t, nv);
                colors.push_back(other(end_color));
                b.add_arc(na + 1, nv, s);
                colors.push_back(other(start_color));
                nv += 1;
                na += 2;
            } else {
                b.add_vertex(nv).add_vertex(nv + 1);
                b.add_arc(na, t, nv);
                colors.push_back(other(end_color));
                b.add_arc(na + 1, nv, nv + 1);
                colors.push_back(end_color);
                b.add_arc(na + 2, nv + 1, s);
                colors.push_back(other(start_color));
                nv += 2;
                na += 3;
            }
        }
    }
    return arc_colored(b.build(), std::move(colors));
}

}  // namespace cpf
