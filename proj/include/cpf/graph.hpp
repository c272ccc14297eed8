#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "cpf/errors.hpp"

namespace cpf {

// Identifiers are opaque non-negative integers fixed at construction time.
// They survive subgraph operations, so a certificate found on a derived graph
// can always be translated back to the instance it came from.
using VertexId = int;
using EdgeId = int;

class GraphBuilder;

// Immutable undirected graph. Plain graphs reject self-loops and parallel
// edges; containers that need parallel edges (locally 2-colored instances)
// construct with allow_parallel, where parallel edges are distinct ids.
class Graph {
public:
    Graph() = default;

    // Convenience constructor: edge ids are assigned 0..m-1 in list order.
    static Graph of(std::vector<VertexId> vertices,
                    const std::vector<std::pair<VertexId, VertexId>>& edges,
                    bool allow_parallel = false);

    std::size_t vertex_count() const { return verts_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool allows_parallel() const { return allow_parallel_; }

    const std::vector<VertexId>& vertices() const { return verts_; }
    const std::vector<EdgeId>& edges() const { return edges_; }

    bool has_vertex(VertexId v) const { return std::binary_search(verts_.begin(), verts_.end(), v); }
    bool has_edge(EdgeId e) const { return std::binary_search(edges_.begin(), edges_.end(), e); }

    std::size_t vertex_index(VertexId v) const {
        auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
        if (it == verts_.end() || *it != v) throw InputError("unknown vertex id " + std::to_string(v));
        return static_cast<std::size_t>(it - verts_.begin());
    }
    std::size_t edge_index(EdgeId e) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) throw InputError("unknown edge id " + std::to_string(e));
        return static_cast<std::size_t>(it - edges_.begin());
    }

    VertexId vertex_at(std::size_t i) const { return verts_[i]; }
    EdgeId edge_at(std::size_t i) const { return edges_[i]; }

    std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return ends_[edge_index(e)]; }

    VertexId other_end(EdgeId e, VertexId v) const {
        auto [a, b] = endpoints(e);
        if (v == a) return b;
        if (v == b) return a;
        throw InputError("vertex " + std::to_string(v) + " is not an endpoint of edge " + std::to_string(e));
    }

    bool is_endpoint(EdgeId e, VertexId v) const {
        auto [a, b] = endpoints(e);
        return v == a || v == b;
    }

    // Incident edge ids in ascending order.
    const std::vector<EdgeId>& incident(VertexId v) const { return inc_[vertex_index(v)]; }

    std::size_t degree(VertexId v) const { return incident(v).size(); }

    // Smallest-id edge between u and v, if any.
    std::optional<EdgeId> find_edge(VertexId u, VertexId v) const {
        for (EdgeId e : incident(u))
            if (other_end(e, u) == v) return e;
        return std::nullopt;
    }

    VertexId max_vertex_id() const { return verts_.empty() ? -1 : verts_.back(); }
    EdgeId max_edge_id() const { return edges_.empty() ? -1 : edges_.back(); }

private:
    friend class GraphBuilder;

    bool allow_parallel_ = false;
    std::vector<VertexId> verts_;                          // ascending
    std::vector<EdgeId> edges_;                            // ascending
    std::vector<std::pair<VertexId, VertexId>> ends_;      // parallel to edges_
    std::vector<std::vector<EdgeId>> inc_;                 // parallel to verts_
};

class GraphBuilder {
public:
    explicit GraphBuilder(bool allow_parallel = false) { g_.allow_parallel_ = allow_parallel; }

    GraphBuilder& add_vertex(VertexId v) {
        if (v < 0) throw InputError("vertex ids must be non-negative, got " + std::to_string(v));
        pending_verts_.push_back(v);
        return *this;
    }

    GraphBuilder& add_edge(EdgeId e, VertexId u, VertexId v) {
        if (e < 0) throw InputError("edge ids must be non-negative, got " + std::to_string(e));
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        pending_edges_.push_back({e, {u, v}});
        return *this;
    }

    Graph build() {
        std::sort(pending_verts_.begin(), pending_verts_.end());
        for (std::size_t i = 1; i < pending_verts_.size(); ++i)
            if (pending_verts_[i] == pending_verts_[i - 1])
                throw InputError("duplicate vertex id " + std::to_string(pending_verts_[i]));
        g_.verts_ = std::move(pending_verts_);

        std::sort(pending_edges_.begin(), pending_edges_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < pending_edges_.size(); ++i)
            if (pending_edges_[i].first == pending_edges_[i - 1].first)
                throw InputError("duplicate edge id " + std::to_string(pending_edges_[i].first));

        g_.inc_.assign(g_.verts_.size(), {});
        g_.edges_.reserve(pending_edges_.size());
        g_.ends_.reserve(pending_edges_.size());
        for (const auto& [e, uv] : pending_edges_) {
            if (!g_.has_vertex(uv.first))
                throw InputError("edge " + std::to_string(e) + " references missing vertex " + std::to_string(uv.first));
            if (!g_.has_vertex(uv.second))
                throw InputError("edge " + std::to_string(e) + " references missing vertex " + std::to_string(uv.second));
            g_.edges_.push_back(e);
            g_.ends_.push_back(uv);
            g_.inc_[g_.vertex_index(uv.first)].push_back(e);
            g_.inc_[g_.vertex_index(uv.second)].push_back(e);
        }
        if (!g_.allow_parallel_) {
            for (std::size_t vi = 0; vi < g_.verts_.size(); ++vi) {
                std::vector<VertexId> seen;
                for (EdgeId e : g_.inc_[vi]) seen.push_back(g_.other_end(e, g_.verts_[vi]));
                std::sort(seen.begin(), seen.end());
                if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
                    throw InputError("parallel edges at vertex " + std::to_string(g_.verts_[vi]));
            }
        }
        return std::move(g_);
    }

private:
    Graph g_;
    std::vector<VertexId> pending_verts_;
    std::vector<std::pair<EdgeId, std::pair<VertexId, VertexId>>> pending_edges_;
};

inline Graph Graph::of(std::vector<VertexId> vertices,
                       const std::vector<std::pair<VertexId, VertexId>>& edges,
                       bool allow_parallel) {
    GraphBuilder b(allow_parallel);
    for (VertexId v : vertices) b.add_vertex(v);
    EdgeId e = 0;
    for (auto [u, v] : edges) b.add_edge(e++, u, v);
    return b.build();
}

// Re-checks the structural invariants of an already-built graph. Construction
// enforces them, so this exists for defense in depth on deserialized data.
inline void validate_graph(const Graph& g) {
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.endpoints(e);
        if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
        if (!g.has_vertex(u) || !g.has_vertex(v))
            throw InputError("edge " + std::to_string(e) + " references a missing vertex");
    }
    if (!g.allows_parallel()) {
        for (VertexId v : g.vertices()) {
            std::vector<VertexId> seen;
            for (EdgeId e : g.incident(v)) seen.push_back(g.other_end(e, v));
            std::sort(seen.begin(), seen.end());
            if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
                throw InputError("parallel edges at vertex " + std::to_string(v));
        }
    }
}

// Connected components as sorted vertex lists, ordered by smallest member.
inline std::vector<std::vector<VertexId>> connected_components(const Graph& g) {
    std::vector<std::vector<VertexId>> comps;
    std::vector<char> seen(g.vertex_count(), 0);
    for (std::size_t i = 0; i < g.vertex_count(); ++i) {
        if (seen[i]) continue;
        std::vector<VertexId> comp;
        std::vector<std::size_t> stack{i};
        seen[i] = 1;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            VertexId v = g.vertex_at(cur);
            comp.push_back(v);
            for (EdgeId e : g.incident(v)) {
                std::size_t ni = g.vertex_index(g.other_end(e, v));
                if (!seen[ni]) {
                    seen[ni] = 1;
                    stack.push_back(ni);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

// Bridges via iterative low-link, ascending edge ids. Parallel edges are
// handled by tracking the incoming edge id rather than the parent vertex.
inline std::vector<EdgeId> bridges(const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<EdgeId> out;
    int timer = 0;

    struct Frame {
        std::size_t v;
        EdgeId in_edge;          // edge used to enter v, -1 at roots
        std::size_t next = 0;    // next incident position to scan
    };

    for (std::size_t root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        std::vector<Frame> stack;
        stack.push_back({root, -1});
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            VertexId v = g.vertex_at(f.v);
            const auto& inc = g.incident(v);
            if (f.next < inc.size()) {
                EdgeId e = inc[f.next++];
                if (e == f.in_edge) continue;
                std::size_t wi = g.vertex_index(g.other_end(e, v));
                if (disc[wi] == -1) {
                    disc[wi] = low[wi] = timer++;
                    stack.push_back({wi, e});
                } else {
                    low[f.v] = std::min(low[f.v], disc[wi]);
                }
            } else {
                Frame done = f;
                stack.pop_back();
                if (!stack.empty()) {
                    std::size_t pi = stack.back().v;
                    low[pi] = std::min(low[pi], low[done.v]);
                    if (low[done.v] > disc[pi]) out.push_back(done.in_edge);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Induced subgraph on the given vertices; ids are preserved.
inline Graph induced_subgraph(const Graph& g, const std::vector<VertexId>& keep) {
    std::vector<VertexId> ks = keep;
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    GraphBuilder b(g.allows_parallel());
    for (VertexId v : ks) {
        if (!g.has_vertex(v)) throw InputError("unknown vertex id " + std::to_string(v));
        b.add_vertex(v);
    }
    auto kept = [&](VertexId v) { return std::binary_search(ks.begin(), ks.end(), v); };
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.endpoints(e);
        if (kept(u) && kept(v)) b.add_edge(e, u, v);
    }
    return b.build();
}

// Decides whether the underlying simple graph is complete multipartite; if so
// returns the parts (components of the complement), ordered by smallest
// member with members ascending.
inline std::optional<std::vector<std::vector<VertexId>>> complete_multipartite_partition(
    const Graph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<char> adj(n * n, 0);
    for (EdgeId e : g.edges()) {
        auto [u, v] = g.endpoints(e);
        std::size_t ui = g.vertex_index(u), vi = g.vertex_index(v);
        adj[ui * n + vi] = adj[vi * n + ui] = 1;
    }
    std::vector<int> part(n, -1);
    std::vector<std::vector<VertexId>> parts;
    for (std::size_t i = 0; i < n; ++i) {
        if (part[i] != -1) continue;
        std::vector<std::size_t> stack{i};
        part[i] = static_cast<int>(parts.size());
        std::vector<VertexId> comp;
        while (!stack.empty()) {
            std::size_t cur = stack.back();
            stack.pop_back();
            comp.push_back(g.vertex_at(cur));
            for (std::size_t j = 0; j < n; ++j) {
                if (part[j] == -1 && !adj[cur * n + j]) {
                    part[j] = part[i];
                    stack.push_back(j);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        parts.push_back(std::move(comp));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if ((part[i] != part[j]) != (adj[i * n + j] != 0)) return std::nullopt;
    return parts;
}

// Copy without one edge (endpoints stay).
inline Graph without_edge(const Graph& g, EdgeId drop) {
    if (!g.has_edge(drop)) throw InputError("unknown edge id " + std::to_string(drop));
    GraphBuilder b(g.allows_parallel());
    for (VertexId v : g.vertices()) b.add_vertex(v);
    for (EdgeId e : g.edges()) {
        if (e == drop) continue;
        auto [u, v] = g.endpoints(e);
        b.add_edge(e, u, v);
    }
    return b.build();
}

}  // namespace cpf
