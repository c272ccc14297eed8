#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "cpf/certificate.hpp"
#include "cpf/errors.hpp"
#include "cpf/graph.hpp"

namespace cpf {

// A set of pairwise vertex-disjoint edges of some parent graph.
struct Matching {
    std::vector<EdgeId> edges;  // ascending

    bool contains(EdgeId e) const { return std::binary_search(edges.begin(), edges.end(), e); }
    std::size_t size() const { return edges.size(); }
    bool operator==(const Matching& o) const { return edges == o.edges; }
};

inline Matching make_matching(std::vector<EdgeId> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    return Matching{std::move(edges)};
}

// A graph bundled with a (not necessarily perfect) matching of it.
struct MatchedGraph {
    Graph graph;
    Matching matching;
};

inline void validate_matching(const Graph& g, const Matching& m) {
    std::vector<VertexId> covered;
    for (EdgeId e : m.edges) {
        if (!g.has_edge(e)) throw InputError("matching references unknown edge " + std::to_string(e));
        auto [u, v] = g.endpoints(e);
        covered.push_back(u);
        covered.push_back(v);
    }
    std::sort(covered.begin(), covered.end());
    if (std::adjacent_find(covered.begin(), covered.end()) != covered.end())
        throw InputError("matching edges share a vertex");
}

inline bool is_perfect_matching(const Graph& g, const Matching& m) {
    return 2 * m.size() == g.vertex_count();
}

namespace detail {

// mate[vertex index] = index of partner, or -1.
inline std::vector<int> mate_map(const Graph& g, const Matching& m) {
    validate_matching(g, m);
    std::vector<int> mate(g.vertex_count(), -1);
    for (EdgeId e : m.edges) {
        auto [u, v] = g.endpoints(e);
        mate[g.vertex_index(u)] = static_cast<int>(g.vertex_index(v));
        mate[g.vertex_index(v)] = static_cast<int>(g.vertex_index(u));
    }
    return mate;
}

// One phase of the Edmonds blossom-shrinking search, run simultaneously from
// every exposed vertex. Union-find keeps contracted blossoms; `pred` and
// `bridge` hold enough forest structure to expand the augmenting path
// afterwards without ever expanding blossoms explicitly. Vertices are scanned
// in ascending order and edge lists are ascending, so the result is
// deterministic. Near-linear per phase (inverse-Ackermann factor).
class BlossomSearch {
public:
    BlossomSearch(const Graph& g, std::vector<int> mate) : g_(g), mate_(std::move(mate)) {
        const std::size_t n = g_.vertex_count();
        state_.assign(n, UNREACHED);
        pred_.assign(n, -1);
        bridge_.assign(n, {-1, -1});
        dsu_parent_.resize(n);
        dsu_size_.assign(n, 1);
        origin_.resize(n);
        anc_v_.assign(n, 0);
        anc_w_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            dsu_parent_[i] = static_cast<int>(i);
            origin_[i] = static_cast<int>(i);
        }
    }

    // Returns an augmenting path as a vertex-index sequence (empty if none).
    std::vector<int> find_path() {
        const int n = static_cast<int>(g_.vertex_count());
        for (int v = 0; v < n; ++v) {
            if (mate_[v] == -1) {
                state_[v] = EVEN;
                push_edges(v);
            }
        }
        std::size_t head = 0;
        while (head < queue_.size()) {
            auto [v, w] = queue_[head++];
            int vp = base(v), wp = base(w);
            if (state_[vp] != EVEN) {
                std::swap(v, w);
                std::swap(vp, wp);
            }
            if (state_[vp] != EVEN || vp == wp) continue;

            if (state_[wp] == UNREACHED) {
                state_[wp] = ODD;
                pred_[wp] = v;
                int x = mate_[wp];
                state_[x] = EVEN;
                push_edges(x);
            } else if (state_[wp] == EVEN) {
                // Either the two even vertices are in the same tree (blossom)
                // or in different trees (augmenting path found).
                ++stamp_;
                int v_up = vp, w_up = wp, nca = -1, v_free = -1, w_free = -1;
                while (nca == -1 && (v_free == -1 || w_free == -1)) {
                    anc_v_[v_up] = stamp_;
                    anc_w_[w_up] = stamp_;
                    if (w_free == -1) w_up = parent(w_up);
                    if (v_free == -1) v_up = parent(v_up);
                    if (mate_[v_up] == -1) v_free = v_up;
                    if (mate_[w_up] == -1) w_free = w_up;
                    // Equidistant walks land on the common ancestor in the
                    // same step, before either mark is written; test the
                    // positions against each other, not just the marks.
                    if (v_up == w_up)
                        nca = v_up;
                    else if (anc_w_[v_up] == stamp_)
                        nca = v_up;
                    else if (anc_v_[w_up] == stamp_)
                        nca = w_up;
                    else if (v_free != -1 && v_free == w_free)
                        nca = v_up;
                }
                if (nca == -1) {
                    std::vector<int> path;
                    retrieve(path, v, v_free, /*rev=*/true);
                    retrieve(path, w, w_free, /*rev=*/false);
                    return path;
                }
                shrink(vp, nca, {v, w});
                shrink(wp, nca, {w, v});
            }
        }
        return {};
    }

private:
    enum State { UNREACHED, EVEN, ODD };

    int find(int x) {
        while (dsu_parent_[x] != x) {
            dsu_parent_[x] = dsu_parent_[dsu_parent_[x]];
            x = dsu_parent_[x];
        }
        return x;
    }
    int base(int x) { return origin_[find(x)]; }

    void unite(int x, int stop) {
        int a = find(x), b = find(stop);
        if (a == b) return;
        if (dsu_size_[a] < dsu_size_[b]) std::swap(a, b);
        dsu_parent_[b] = a;
        dsu_size_[a] += dsu_size_[b];
        origin_[a] = stop;
    }

    // Tree parent of a base vertex in the alternating forest.
    int parent(int x) {
        if (state_[x] == EVEN && mate_[x] != -1) return mate_[x];
        if (state_[x] == ODD) return base(pred_[x]);
        return x;
    }

    void push_edges(int v) {
        VertexId vid = g_.vertex_at(static_cast<std::size_t>(v));
        for (EdgeId e : g_.incident(vid)) {
            int w = static_cast<int>(g_.vertex_index(g_.other_end(e, vid)));
            queue_.push_back({v, w});
        }
    }

    void shrink(int side, int stop, std::pair<int, int> the_bridge) {
        for (int x = side; x != stop; x = parent(x)) {
            unite(x, stop);
            if (state_[x] == ODD) {
                bridge_[x] = the_bridge;
                push_edges(x);
            }
        }
    }

    // Iterative expansion of the implicit augmenting path; the recursive
    // definition nests with blossom depth, which can exceed the call stack on
    // large instances.
    struct Task {
        int v, w;
        bool rev;
        bool emit_only;
    };
    void retrieve(std::vector<int>& out, int v, int w, bool rev) {
        std::vector<Task> stack{{v, w, rev, false}};
        while (!stack.empty()) {
            Task t = stack.back();
            stack.pop_back();
            if (t.emit_only) {
                out.push_back(t.v);
                continue;
            }
            if (t.v == t.w) {
                out.push_back(t.v);
            } else if (state_[t.v] == EVEN) {
                if (!t.rev) {
                    stack.push_back({pred_[mate_[t.v]], t.w, false, false});
                    stack.push_back({mate_[t.v], 0, false, true});
                    stack.push_back({t.v, 0, false, true});
                } else {
                    stack.push_back({t.v, 0, false, true});
                    stack.push_back({mate_[t.v], 0, false, true});
                    stack.push_back({pred_[mate_[t.v]], t.w, true, false});
                }
            } else {  // ODD
                auto [bx, by] = bridge_[t.v];
                if (!t.rev) {
                    stack.push_back({by, t.w, false, false});
                    stack.push_back({bx, mate_[t.v], true, false});
                    stack.push_back({t.v, 0, false, true});
                } else {
                    stack.push_back({t.v, 0, false, true});
                    stack.push_back({bx, mate_[t.v], false, false});
                    stack.push_back({by, t.w, true, false});
                }
            }
        }
    }

    const Graph& g_;
    std::vector<int> mate_;
    std::vector<State> state_;
    std::vector<int> pred_;
    std::vector<std::pair<int, int>> bridge_;
    std::vector<int> dsu_parent_, dsu_size_, origin_;
    std::vector<int> anc_v_, anc_w_;
    int stamp_ = 0;
    std::vector<std::pair<int, int>> queue_;
};

inline Certificate path_certificate(const Graph& g, const std::vector<int>& idx_path,
                                    ConstraintKind tag) {
    Certificate c;
    c.kind = WalkKind::path;
    c.constraint = tag;
    for (int i : idx_path) c.vertices.push_back(g.vertex_at(static_cast<std::size_t>(i)));
    for (std::size_t i = 0; i + 1 < c.vertices.size(); ++i) {
        auto e = g.find_edge(c.vertices[i], c.vertices[i + 1]);
        if (!e) throw Error("internal: non-adjacent vertices on retrieved path");
        c.edges.push_back(*e);
    }
    return c;
}

}  // namespace detail

// Shortest-by-construction witness that m is not maximum: an alternating path
// whose endpoints are both exposed (Berge). Deterministic: the simultaneous
// search seeds exposed vertices in ascending order.
inline std::optional<Certificate> find_augmenting_path(const Graph& g, const Matching& m) {
    detail::BlossomSearch search(g, detail::mate_map(g, m));
    auto path = search.find_path();
    if (path.empty()) return std::nullopt;
    return detail::path_certificate(g, path, ConstraintKind::alternating);
}

// m with the edges of an alternating path/cycle flipped in or out.
inline Matching augmented(const Graph& g, const Matching& m, const Certificate& flip) {
    std::vector<EdgeId> out;
    for (EdgeId e : m.edges)
        if (std::find(flip.edges.begin(), flip.edges.end(), e) == flip.edges.end()) out.push_back(e);
    for (EdgeId e : flip.edges)
        if (!m.contains(e)) out.push_back(e);
    (void)g;
    return make_matching(std::move(out));
}

inline Matching maximum_matching(const Graph& g, Matching seed = {}) {
    Matching m = make_matching(seed.edges);
    for (;;) {
        auto p = find_augmenting_path(g, m);
        if (!p) return m;
        m = augmented(g, m, *p);
    }
}

// Unique-perfect-matching test that never looks at a matching: repeatedly
// delete (with endpoints) a bridge whose two sides both have an odd number of
// vertices. Every perfect matching must contain such a bridge, so reaching
// the empty graph certifies the deleted set as the unique perfect matching;
// stalling certifies that no unique perfect matching exists.
inline std::optional<Matching> find_unique_perfect_matching(const Graph& g) {
    std::vector<VertexId> remaining = g.vertices();
    std::vector<EdgeId> picked;
    while (!remaining.empty()) {
        Graph h = induced_subgraph(g, remaining);
        std::optional<EdgeId> chosen;
        for (EdgeId e : bridges(h)) {
            auto [u, v] = h.endpoints(e);
            // Side of u in h - e, found without building the subgraph.
            std::vector<char> seen(h.vertex_count(), 0);
            std::vector<VertexId> stack{u};
            seen[h.vertex_index(u)] = 1;
            std::size_t side = 0;
            while (!stack.empty()) {
                VertexId x = stack.back();
                stack.pop_back();
                ++side;
                for (EdgeId f : h.incident(x)) {
                    if (f == e) continue;
                    VertexId y = h.other_end(f, x);
                    if (!seen[h.vertex_index(y)]) {
                        seen[h.vertex_index(y)] = 1;
                        stack.push_back(y);
                    }
                }
            }
            std::size_t comp_total = 0;  // size of u's component in h (with e)
            {
                std::vector<char> seen2(h.vertex_count(), 0);
                std::vector<VertexId> stack2{u};
                seen2[h.vertex_index(u)] = 1;
                while (!stack2.empty()) {
                    VertexId x = stack2.back();
                    stack2.pop_back();
                    ++comp_total;
                    for (EdgeId f : h.incident(x)) {
                        VertexId y = h.other_end(f, x);
                        if (!seen2[h.vertex_index(y)]) {
                            seen2[h.vertex_index(y)] = 1;
                            stack2.push_back(y);
                        }
                    }
                }
            }
            std::size_t other_side = comp_total - side;
            if (side % 2 == 1 && other_side % 2 == 1) {
                chosen = e;
                break;
            }
        }
        if (!chosen) return std::nullopt;
        auto [u, v] = h.endpoints(*chosen);
        picked.push_back(*chosen);
        remaining.erase(std::remove_if(remaining.begin(), remaining.end(),
                                       [&](VertexId x) { return x == u || x == v; }),
                        remaining.end());
    }
    return make_matching(std::move(picked));
}

// Alternating cycle for a perfect matching m, or absent iff m is the unique
// perfect matching. Runs the bridge-deletion check first; only on a stall does
// it fall back to deleting a non-forced matching edge and re-augmenting (the
// augmenting path plus the deleted edge is the cycle).
inline std::optional<Certificate> find_alternating_cycle(const Graph& g, const Matching& m) {
    validate_matching(g, m);
    if (!is_perfect_matching(g, m))
        throw PreconditionError("find_alternating_cycle requires a perfect matching");

    // Re-run the deletion process, tracking what survives.
    std::vector<VertexId> remaining = g.vertices();
    for (;;) {
        if (remaining.empty()) return std::nullopt;  // m is unique
        Graph h = induced_subgraph(g, remaining);
        std::optional<EdgeId> chosen;
        for (EdgeId e : bridges(h)) {
            if (!m.contains(e)) continue;  // matching bridges of a PM always have odd sides
            chosen = e;
            break;
        }
        if (!chosen) {
            // Stall: h's perfect matching is not unique; find the cycle.
            Matching mh;
            for (EdgeId e : m.edges)
                if (h.has_edge(e)) mh.edges.push_back(e);
            for (EdgeId e : mh.edges) {
                Graph he = without_edge(h, e);
                Matching me;
                for (EdgeId f : mh.edges)
                    if (f != e) me.edges.push_back(f);
                auto p = find_augmenting_path(he, me);
                if (!p) continue;
                Certificate cyc;
                cyc.kind = WalkKind::cycle;
                cyc.constraint = ConstraintKind::alternating;
                cyc.vertices = p->vertices;
                cyc.edges = p->edges;
                cyc.vertices.push_back(p->vertices.front());
                cyc.edges.push_back(e);
                return cyc;
            }
            throw Error("internal: deletion stalled but no alternating cycle found");
        }
        auto [u, v] = h.endpoints(*chosen);
        remaining.erase(std::remove_if(remaining.begin(), remaining.end(),
                                       [&](VertexId x) { return x == u || x == v; }),
                        remaining.end());
    }
}

namespace detail {

// Core of the prescribed-edge search, assuming the hypotheses (exactly two
// exposed vertices s, t and no alternating cycle) already hold. Split out so
// batch callers that verified the hypotheses once don't pay for the
// re-verification on every call.
inline std::optional<Certificate> prescribed_path_core(const Graph& g, const Matching& m, EdgeId e,
                                                       VertexId s, VertexId t) {
    Graph g1 = without_edge(g, e);
    Matching m1;
    for (EdgeId f : m.edges)
        if (f != e) m1.edges.push_back(f);

    auto p1 = find_augmenting_path(g1, m1);
    if (!p1) return std::nullopt;
    Matching m2 = augmented(g1, m1, *p1);
    auto p2 = find_augmenting_path(g1, m2);
    if (!p2) return std::nullopt;
    Matching mfull = augmented(g1, m2, *p2);  // perfect matching of g - e

    // D = m1 symmetric-difference mfull: two alternating paths pairing
    // {u, v} with the endpoints of e.
    std::vector<EdgeId> diff;
    for (EdgeId f : m1.edges)
        if (!mfull.contains(f)) diff.push_back(f);
    for (EdgeId f : mfull.edges)
        if (!m1.contains(f)) diff.push_back(f);

    auto [a, b] = g.endpoints(e);
    auto walk_from = [&](VertexId start) {
        Certificate part;
        part.vertices.push_back(start);
        VertexId cur = start;
        EdgeId in = -1;
        for (;;) {
            std::optional<EdgeId> next;
            for (EdgeId f : diff) {
                if (f == in) continue;
                if (g1.is_endpoint(f, cur)) {
                    next = f;
                    break;
                }
            }
            if (!next) return part;
            cur = g1.other_end(*next, cur);
            in = *next;
            part.vertices.push_back(cur);
            part.edges.push_back(*next);
        }
    };

    Certificate first = walk_from(s);
    VertexId hit = first.vertices.back();
    if (hit != a && hit != b) throw Error("internal: difference path misses the prescribed edge");
    VertexId far = (hit == a) ? b : a;
    Certificate second = walk_from(far);
    if (second.vertices.back() != t) throw Error("internal: difference paths do not pair up");

    Certificate out;
    out.kind = WalkKind::path;
    out.constraint = ConstraintKind::alternating;
    out.vertices = first.vertices;
    out.edges = first.edges;
    out.edges.push_back(e);
    out.vertices.insert(out.vertices.end(), second.vertices.begin(), second.vertices.end());
    out.edges.insert(out.edges.end(), second.edges.begin(), second.edges.end());
    return out;
}

}  // namespace detail

// Augmenting path constrained to cross the matching edge e. Requires exactly
// two exposed vertices and no alternating cycle. Deletes e, re-matches twice;
// the symmetric difference of the old and new matchings is then exactly two
// alternating paths that join through e.
inline std::optional<Certificate> augmenting_path_through_edge(const Graph& g, const Matching& m,
                                                               EdgeId e) {
    auto mate = detail::mate_map(g, m);
    if (!m.contains(e)) throw PreconditionError("prescribed edge is not in the matching");
    std::vector<VertexId> exposed;
    for (std::size_t i = 0; i < g.vertex_count(); ++i)
        if (mate[i] == -1) exposed.push_back(g.vertex_at(i));
    if (exposed.size() != 2)
        throw PreconditionError("augmenting_path_through_edge requires exactly two exposed vertices");
    {
        std::vector<VertexId> matched;
        for (VertexId v : g.vertices())
            if (mate[g.vertex_index(v)] != -1) matched.push_back(v);
        Graph h = induced_subgraph(g, matched);
        if (find_alternating_cycle(h, m)) throw PreconditionError("matching admits an alternating cycle");
    }
    return detail::prescribed_path_core(g, m, e, exposed[0], exposed[1]);
}

// An odd cycle matched within itself except at its root. The stem is the
// root's matching edge when the root is matched (it leaves the cycle).
struct Blossom {
    VertexId root = -1;
    Certificate cycle;
    std::optional<EdgeId> stem;
};

inline void validate_blossom(const Graph& g, const Matching& m, const Blossom& b) {
    const Certificate& c = b.cycle;
    if (c.kind != WalkKind::cycle) throw Error("blossom cycle certificate has wrong kind");
    if (c.vertices.size() < 4 || c.vertices.front() != c.vertices.back())
        throw Error("blossom cycle is not closed");
    if (c.vertices.front() != b.root) throw Error("blossom cycle does not start at the root");
    if (c.edges.size() % 2 == 0) throw Error("blossom cycle is not odd");
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
        auto [x, y] = g.endpoints(c.edges[i]);
        VertexId p = c.vertices[i], q = c.vertices[i + 1];
        if (!((x == p && y == q) || (x == q && y == p))) throw Error("blossom cycle edge mismatch");
    }
    std::vector<VertexId> distinct(c.vertices.begin(), c.vertices.end() - 1);
    std::vector<VertexId> sorted = distinct;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("blossom cycle repeats a vertex");
    // Root's cycle edges must be non-matching; every other vertex matched within.
    if (m.contains(c.edges.front()) || m.contains(c.edges.back()))
        throw Error("blossom root is matched within the cycle");
    for (std::size_t i = 1; i + 1 < c.vertices.size(); ++i) {
        bool ok = m.contains(c.edges[i - 1]) || m.contains(c.edges[i]);
        if (!ok) throw Error("blossom vertex not matched within the cycle");
    }
    auto mate = detail::mate_map(g, m);
    int root_mate = mate[g.vertex_index(b.root)];
    if (root_mate == -1) {
        if (b.stem) throw Error("exposed blossom root cannot have a stem");
    } else {
        VertexId partner = g.vertex_at(static_cast<std::size_t>(root_mate));
        if (!b.stem) throw Error("matched blossom root needs its stem");
        auto [x, y] = g.endpoints(*b.stem);
        if (!m.contains(*b.stem) || !((x == b.root && y == partner) || (x == partner && y == b.root)))
            throw Error("blossom stem is not the root's matching edge");
        if (std::find(distinct.begin(), distinct.end(), partner) != distinct.end())
            throw Error("blossom stem endpoint lies on the cycle");
    }
}

}  // namespace cpf
