#pragma once

// Deliberately naive ground truth. Every certificate of a queried kind is
// found by backtracking over raw edge sequences, and each accepted candidate
// is re-checked by the independent validators before it is returned — so a
// solver that agrees with this module agrees with something that shares no
// search machinery with it. Only the core graph vocabulary (graphs, colors,
// transition systems, matchings as plain edge sets) is used; none of the
// solver, reduction, or augmenting-path code paths are touched. Guards are
// hard errors: a silently truncated enumeration would be worse than none.

#include <algorithm>
#include <functional>
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

namespace odetail {

// Path-shaped searches are bounded by vertex count (each vertex visited at
// most once); trail-shaped ones by edge count. The guard checks whichever
// bound actually limits the backtracking depth for the queried kind.
inline bool bounded_by_vertices(WalkKind kind) {
    return kind == WalkKind::path || kind == WalkKind::cycle;
}

inline void check_guard(std::size_t vertices, std::size_t edges, WalkKind kind) {
    if (kind == WalkKind::walk)
        throw InputError("general walks are unbounded; query a path, trail, cycle, or closed trail");
    if (bounded_by_vertices(kind)) {
        if (vertices > 8)
            throw GuardError("exhaustive " + to_string(kind) + " search handles at most 8 vertices");
    } else if (edges > 8) {
        throw GuardError("exhaustive " + to_string(kind) + " search handles at most 8 edges");
    }
}

inline void check_endpoints(WalkKind kind, std::optional<VertexId> s, std::optional<VertexId> t) {
    if (is_closed(kind)) {
        if (s || t) throw InputError("closed walk kinds take no endpoints");
    } else {
        if (!s || !t) throw InputError("open walk kinds need both endpoints");
        if (*s == *t) throw InputError("endpoints must be distinct");
    }
}

// A closed walk listed from a different start vertex (or, when the edges are
// undirected, in the opposite direction) is the same witness. The canonical
// form is the lexicographically smallest (vertices, edges) pair over all
// rotations, and over both directions when reflections are allowed.
struct ClosedForm {
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;

    bool operator<(const ClosedForm& o) const {
        return std::tie(vertices, edges) < std::tie(o.vertices, o.edges);
    }
};

inline ClosedForm rotate_closed(const std::vector<VertexId>& vs, const std::vector<EdgeId>& es,
                                std::size_t r) {
    std::size_t k = es.size();
    ClosedForm f;
    f.vertices.reserve(k + 1);
    f.edges.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        f.vertices.push_back(vs[(r + i) % k]);
        f.edges.push_back(es[(r + i) % k]);
    }
    f.vertices.push_back(f.vertices.front());
    return f;
}

inline ClosedForm closed_canonical(const std::vector<VertexId>& vs, const std::vector<EdgeId>& es,
                                   bool with_reflection) {
    std::size_t k = es.size();
    ClosedForm best = rotate_closed(vs, es, 0);
    for (std::size_t r = 1; r < k; ++r) best = std::min(best, rotate_closed(vs, es, r));
    if (with_reflection) {
        std::vector<VertexId> rv(vs.rbegin(), vs.rend());
        std::vector<EdgeId> re(es.rbegin(), es.rend());
        for (std::size_t r = 0; r < k; ++r) best = std::min(best, rotate_closed(rv, re, r));
    }
    return best;
}

// Backtracking core for undirected instances. `step_ok(es, pivot, next)`
// judges the turn from es.back() onto `next` at `pivot`; `seam_ok(es, origin)`
// judges the closing turn between es.back() and es.front(). Shape rules
// (distinctness, endpoints, the two-edge minimum for closed walks) live here;
// the constraint hooks only mirror what the validators will re-check.
template <typename StepOk, typename SeamOk, typename Emit>
void enumerate_undirected(const Graph& g, WalkKind kind, std::optional<VertexId> s,
                          std::optional<VertexId> t, StepOk&& step_ok, SeamOk&& seam_ok,
                          Emit&& emit_closed_form, std::vector<std::pair<std::vector<VertexId>,
                          std::vector<EdgeId>>>* open_out) {
    const bool vertex_simple = (kind == WalkKind::path || kind == WalkKind::cycle);
    std::vector<VertexId> vs;
    std::vector<EdgeId> es;

    if (!is_closed(kind)) {
        std::function<void(VertexId)> extend = [&](VertexId cur) {
            for (EdgeId e : g.incident(cur)) {
                if (std::find(es.begin(), es.end(), e) != es.end()) continue;
                if (!es.empty() && !step_ok(es, cur, e)) continue;
                VertexId w = g.other_end(e, cur);
                if (vertex_simple && std::find(vs.begin(), vs.end(), w) != vs.end()) continue;
                es.push_back(e);
                vs.push_back(w);
                if (w == *t) open_out->push_back({vs, es});
                extend(w);
                vs.pop_back();
                es.pop_back();
            }
        };
        vs.push_back(*s);
        extend(*s);
        return;
    }

    // Closed kinds: the start vertex is pinned to the walk's minimum vertex,
    // so every closed walk is generated (up to rotation) exactly from one
    // start; canonical deduplication absorbs the remaining symmetry.
    for (VertexId v0 : g.vertices()) {
        vs.assign(1, v0);
        es.clear();
        std::function<void(VertexId)> extend = [&](VertexId cur) {
            for (EdgeId e : g.incident(cur)) {
                if (std::find(es.begin(), es.end(), e) != es.end()) continue;
                if (!es.empty() && !step_ok(es, cur, e)) continue;
                VertexId w = g.other_end(e, cur);
                if (w == v0) {
                    es.push_back(e);
                    vs.push_back(w);
                    if (es.size() >= 2 && seam_ok(es, v0)) emit_closed_form(vs, es);
                    if (kind == WalkKind::closed_trail) extend(w);
                    vs.pop_back();
                    es.pop_back();
                    continue;
                }
                if (w < v0) continue;
                if (vertex_simple && std::find(vs.begin(), vs.end(), w) != vs.end()) continue;
                es.push_back(e);
                vs.push_back(w);
                extend(w);
                vs.pop_back();
                es.pop_back();
            }
        };
        extend(v0);
    }
}

// Directed twin of the above; traversal follows arcs tail to head and closed
// walks are canonical up to rotation only.
template <typename StepOk, typename SeamOk, typename Emit>
void enumerate_directed(const Digraph& d, WalkKind kind, std::optional<VertexId> s,
                        std::optional<VertexId> t, StepOk&& step_ok, SeamOk&& seam_ok,
                        Emit&& emit_closed_form, std::vector<std::pair<std::vector<VertexId>,
                        std::vector<EdgeId>>>* open_out) {
    const bool vertex_simple = (kind == WalkKind::path || kind == WalkKind::cycle);
    std::vector<VertexId> vs;
    std::vector<ArcId> es;

    if (!is_closed(kind)) {
        std::function<void(VertexId)> extend = [&](VertexId cur) {
            for (ArcId a : d.out(cur)) {
                if (std::find(es.begin(), es.end(), a) != es.end()) continue;
                if (!es.empty() && !step_ok(es, cur, a)) continue;
                VertexId w = d.head(a);
                if (vertex_simple && std::find(vs.begin(), vs.end(), w) != vs.end()) continue;
                es.push_back(a);
                vs.push_back(w);
                if (w == *t) open_out->push_back({vs, es});
                extend(w);
                vs.pop_back();
                es.pop_back();
            }
        };
        vs.push_back(*s);
        extend(*s);
        return;
    }

    for (VertexId v0 : d.vertices()) {
        vs.assign(1, v0);
        es.clear();
        std::function<void(VertexId)> extend = [&](VertexId cur) {
            for (ArcId a : d.out(cur)) {
                if (std::find(es.begin(), es.end(), a) != es.end()) continue;
                if (!es.empty() && !step_ok(es, cur, a)) continue;
                VertexId w = d.head(a);
                if (w == v0) {
                    es.push_back(a);
                    vs.push_back(w);
                    if (es.size() >= 2 && seam_ok(es, v0)) emit_closed_form(vs, es);
                    if (kind == WalkKind::closed_trail) extend(w);
                    vs.pop_back();
                    es.pop_back();
                    continue;
                }
                if (w < v0) continue;
                if (vertex_simple && std::find(vs.begin(), vs.end(), w) != vs.end()) continue;
                es.push_back(a);
                vs.push_back(w);
                extend(w);
                vs.pop_back();
                es.pop_back();
            }
        };
        extend(v0);
    }
}

// Assemble, validate, and collect. The emitted kind is the strongest the
// content supports (the same convention every producer in the repository
// follows), so solver and oracle certificates for equal walks compare equal.
template <typename Validate>
std::vector<Certificate> finalize(ConstraintKind constraint, Validate&& validate,
                                  const std::vector<std::pair<std::vector<VertexId>,
                                  std::vector<EdgeId>>>& open,
                                  const std::set<ClosedForm>& closed) {
    std::vector<Certificate> out;
    auto emit = [&](std::vector<VertexId> vs, std::vector<EdgeId> es, bool is_closed_walk) {
        Certificate c = make_walk_certificate(constraint, std::move(vs), std::move(es), is_closed_walk);
        try {
            validate(c);
        } catch (const Error& err) {
            throw Error(std::string("oracle produced an invalid certificate: ") + err.what());
        }
        out.push_back(std::move(c));
    };
    for (const auto& [vs, es] : open) emit(vs, es, false);
    for (const ClosedForm& f : closed) emit(f.vertices, f.edges, true);
    return out;
}

template <typename StepOk, typename SeamOk, typename Validate>
std::vector<Certificate> run_undirected(const Graph& g, ConstraintKind constraint, WalkKind kind,
                                        std::optional<VertexId> s, std::optional<VertexId> t,
                                        StepOk&& step_ok, SeamOk&& seam_ok, Validate&& validate) {
    check_endpoints(kind, s, t);
    check_guard(g.vertex_count(), g.edge_count(), kind);
    std::vector<std::pair<std::vector<VertexId>, std::vector<EdgeId>>> open;
    std::set<ClosedForm> closed;
    enumerate_undirected(g, kind, s, t, step_ok, seam_ok,
                         [&](const std::vector<VertexId>& vs, const std::vector<EdgeId>& es) {
                             closed.insert(closed_canonical(vs, es, /*with_reflection=*/true));
                         },
                         &open);
    return finalize(constraint, validate, open, closed);
}

template <typename StepOk, typename SeamOk, typename Validate>
std::vector<Certificate> run_directed(const Digraph& d, ConstraintKind constraint, WalkKind kind,
                                      std::optional<VertexId> s, std::optional<VertexId> t,
                                      StepOk&& step_ok, SeamOk&& seam_ok, Validate&& validate) {
    check_endpoints(kind, s, t);
    check_guard(d.vertex_count(), d.arc_count(), kind);
    std::vector<std::pair<std::vector<VertexId>, std::vector<EdgeId>>> open;
    std::set<ClosedForm> closed;
    enumerate_directed(d, kind, s, t, step_ok, seam_ok,
                       [&](const std::vector<VertexId>& vs, const std::vector<ArcId>& es) {
                           closed.insert(closed_canonical(vs, es, /*with_reflection=*/false));
                       },
                       &open);
    return finalize(constraint, validate, open, closed);
}

}  // namespace odetail

// ---------------------------------------------------------------------------
// Exhaustive certificate enumeration, one overload per instance family
// ---------------------------------------------------------------------------

// All transition-compatible walks of the given kind. Open kinds require both
// endpoints; closed kinds are returned once per rotation/reflection class.
inline std::vector<Certificate> exhaustive_search(const Graph& g, const TransitionSystem& ts,
                                                  WalkKind kind, std::optional<VertexId> s = {},
                                                  std::optional<VertexId> t = {}) {
    validate_transition_system(g, ts);
    return odetail::run_undirected(
        g, ConstraintKind::transitions, kind, s, t,
        [&](const std::vector<EdgeId>& es, VertexId pivot, EdgeId next) {
            return ts.allows(g, pivot, es.back(), next);
        },
        [&](const std::vector<EdgeId>& es, VertexId origin) {
            return ts.allows(g, origin, es.back(), es.front());
        },
        [&](const Certificate& c) { validate_certificate(g, ts, c); });
}

// All properly colored or rainbow walks of the given kind.
inline std::vector<Certificate> exhaustive_search(const EdgeColoredGraph& g,
                                                  ConstraintKind constraint, WalkKind kind,
                                                  std::optional<VertexId> s = {},
                                                  std::optional<VertexId> t = {}) {
    if (constraint != ConstraintKind::properly_colored && constraint != ConstraintKind::rainbow)
        throw InputError("edge-colored search answers pc or rainbow queries");
    if (constraint == ConstraintKind::properly_colored) {
        return odetail::run_undirected(
            g.graph, constraint, kind, s, t,
            [&](const std::vector<EdgeId>& es, VertexId, EdgeId next) {
                return g.color_of(es.back()) != g.color_of(next);
            },
            [&](const std::vector<EdgeId>& es, VertexId) {
                return g.color_of(es.back()) != g.color_of(es.front());
            },
            [&](const Certificate& c) { validate_certificate(g, c); });
    }
    return odetail::run_undirected(
        g.graph, constraint, kind, s, t,
        [&](const std::vector<EdgeId>& es, VertexId, EdgeId next) {
            ColorId c = g.color_of(next);
            return std::none_of(es.begin(), es.end(),
                                [&](EdgeId e) { return g.color_of(e) == c; });
        },
        [&](const std::vector<EdgeId>&, VertexId) { return true; },
        [&](const Certificate& c) { validate_certificate(g, c); });
}

// All side-alternating walks on a locally 2-colored graph.
inline std::vector<Certificate> exhaustive_search(const LocallyTwoColoredGraph& l, WalkKind kind,
                                                  std::optional<VertexId> s = {},
                                                  std::optional<VertexId> t = {}) {
    return odetail::run_undirected(
        l.graph, ConstraintKind::locally_two_colored, kind, s, t,
        [&](const std::vector<EdgeId>& es, VertexId pivot, EdgeId next) {
            return l.side_at(es.back(), pivot) != l.side_at(next, pivot);
        },
        [&](const std::vector<EdgeId>& es, VertexId origin) {
            return l.side_at(es.back(), origin) != l.side_at(es.front(), origin);
        },
        [&](const Certificate& c) { validate_certificate(l, c); });
}

// All matching-alternating walks: consecutive edges disagree on membership.
inline std::vector<Certificate> exhaustive_search(const Graph& g, const Matching& m, WalkKind kind,
                                                  std::optional<VertexId> s = {},
                                                  std::optional<VertexId> t = {}) {
    validate_matching(g, m);
    return odetail::run_undirected(
        g, ConstraintKind::alternating, kind, s, t,
        [&](const std::vector<EdgeId>& es, VertexId, EdgeId next) {
            return m.contains(es.back()) != m.contains(next);
        },
        [&](const std::vector<EdgeId>& es, VertexId) {
            return m.contains(es.back()) != m.contains(es.front());
        },
        [&](const Certificate& c) { validate_certificate(g, m, c); });
}

// All properly colored directed walks.
inline std::vector<Certificate> exhaustive_search(const ArcColoredDigraph& d, WalkKind kind,
                                                  std::optional<VertexId> s = {},
                                                  std::optional<VertexId> t = {}) {
    return odetail::run_directed(
        d.graph, ConstraintKind::pc_directed, kind, s, t,
        [&](const std::vector<ArcId>& es, VertexId, ArcId next) {
            return d.color_of(es.back()) != d.color_of(next);
        },
        [&](const std::vector<ArcId>& es, VertexId) {
            return d.color_of(es.back()) != d.color_of(es.front());
        },
        [&](const Certificate& c) { validate_certificate(d, c); });
}

// All matching-alternating directed walks.
inline std::vector<Certificate> exhaustive_search(const MatchedDigraph& md, WalkKind kind,
                                                  std::optional<VertexId> s = {},
                                                  std::optional<VertexId> t = {}) {
    validate_matched_digraph(md);
    return odetail::run_directed(
        md.graph, ConstraintKind::alternating_directed, kind, s, t,
        [&](const std::vector<ArcId>& es, VertexId, ArcId next) {
            return md.matched(es.back()) != md.matched(next);
        },
        [&](const std::vector<ArcId>& es, VertexId) {
            return md.matched(es.back()) != md.matched(es.front());
        },
        [&](const Certificate& c) { validate_certificate(md, c); });
}

// ---------------------------------------------------------------------------
// Matching enumeration and bridge-deletion orderings
// ---------------------------------------------------------------------------

// Every perfect matching, by branching on which edge covers the lowest
// uncovered vertex. Each matching is generated exactly once; the result is
// sorted by edge list for deterministic comparison.
inline std::vector<Matching> all_perfect_matchings(const Graph& g) {
    if (g.vertex_count() > 16)
        throw GuardError("perfect matching enumeration handles at most 16 vertices");
    std::vector<Matching> out;
    std::set<VertexId> covered;
    std::vector<EdgeId> chosen;
    const std::vector<VertexId>& verts = g.vertices();
    std::function<void()> rec = [&]() {
        auto it = std::find_if(verts.begin(), verts.end(),
                               [&](VertexId v) { return !covered.count(v); });
        if (it == verts.end()) {
            out.push_back(make_matching(chosen));
            return;
        }
        VertexId v = *it;
        for (EdgeId e : g.incident(v)) {
            VertexId w = g.other_end(e, v);
            if (covered.count(w)) continue;
            covered.insert(v);
            covered.insert(w);
            chosen.push_back(e);
            rec();
            chosen.pop_back();
            covered.erase(v);
            covered.erase(w);
        }
    };
    rec();
    std::sort(out.begin(), out.end(),
              [](const Matching& a, const Matching& b) { return a.edges < b.edges; });
    return out;
}

// Every order in which the matching edges can be peeled off when each step
// must pick a matching edge that is currently a bridge of the remaining
// induced subgraph and deletes it together with both endpoints. Uniqueness of
// the perfect matching is verified with this module's own enumeration, not
// with the augmenting-path engine, so the two can check each other.
inline std::vector<std::vector<EdgeId>> all_bridge_deletion_orderings(const Graph& g,
                                                                      const Matching& m) {
    validate_matching(g, m);
    if (!is_perfect_matching(g, m)) throw PreconditionError("matching is not perfect");
    if (m.size() > 8)
        throw GuardError("bridge-deletion ordering enumeration handles at most 8 matching edges");
    if (all_perfect_matchings(g).size() != 1)
        throw PreconditionError("perfect matching is not unique");

    std::vector<std::vector<EdgeId>> out;
    std::vector<EdgeId> order;
    std::function<void(std::vector<VertexId>)> rec = [&](std::vector<VertexId> remaining) {
        if (remaining.empty()) {
            out.push_back(order);
            return;
        }
        Graph h = induced_subgraph(g, remaining);
        std::vector<EdgeId> cut = bridges(h);
        std::vector<EdgeId> deletable;
        std::set_intersection(cut.begin(), cut.end(), m.edges.begin(), m.edges.end(),
                              std::back_inserter(deletable));
        for (EdgeId e : deletable) {
            auto [u, v] = g.endpoints(e);
            std::vector<VertexId> next;
            next.reserve(remaining.size() - 2);
            for (VertexId x : remaining)
                if (x != u && x != v) next.push_back(x);
            order.push_back(e);
            rec(std::move(next));
            order.pop_back();
        }
    };
    rec(g.vertices());
    return out;
}

}  // namespace cpf
