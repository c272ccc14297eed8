#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "cpf/colored.hpp"
#include "cpf/errors.hpp"

namespace cpf {

using ArcId = int;

class DigraphBuilder;

// Immutable directed graph. Self-loops are rejected. Parallel arcs in the
// same direction need allow_parallel; antiparallel pairs (u,v) and (v,u) are
// always permitted.
class Digraph {
public:
    Digraph() = default;

    // Convenience constructor: arc ids are assigned 0..m-1 in list order.
    static Digraph of(std::vector<VertexId> vertices,
                      const std::vector<std::pair<VertexId, VertexId>>& arcs,
                      bool allow_parallel = false);

    std::size_t vertex_count() const { return verts_.size(); }
    std::size_t arc_count() const { return arcs_.size(); }
    bool allows_parallel() const { return allow_parallel_; }

    const std::vector<VertexId>& vertices() const { return verts_; }
    const std::vector<ArcId>& arcs() const { return arcs_; }

    bool has_vertex(VertexId v) const { return std::binary_search(verts_.begin(), verts_.end(), v); }
    bool has_arc(ArcId a) const { return std::binary_search(arcs_.begin(), arcs_.end(), a); }

    std::size_t vertex_index(VertexId v) const {
        auto it = std::lower_bound(verts_.begin(), verts_.end(), v);
        if (it == verts_.end() || *it != v) throw InputError("unknown vertex id " + std::to_string(v));
        return static_cast<std::size_t>(it - verts_.begin());
    }
    std::size_t arc_index(ArcId a) const {
        auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
        if (it == arcs_.end() || *it != a) throw InputError("unknown arc id " + std::to_string(a));
        return static_cast<std::size_t>(it - arcs_.begin());
    }

    VertexId vertex_at(std::size_t i) const { return verts_[i]; }
    ArcId arc_at(std::size_t i) const { return arcs_[i]; }

    VertexId tail(ArcId a) const { return ends_[arc_index(a)].first; }
    VertexId head(ArcId a) const { return ends_[arc_index(a)].second; }
    std::pair<VertexId, VertexId> endpoints(ArcId a) const { return ends_[arc_index(a)]; }

    // Outgoing / incoming arc ids in ascending order.
    const std::vector<ArcId>& out(VertexId v) const { return out_[vertex_index(v)]; }
    const std::vector<ArcId>& in(VertexId v) const { return in_[vertex_index(v)]; }

    std::size_t out_degree(VertexId v) const { return out(v).size(); }
    std::size_t in_degree(VertexId v) const { return in(v).size(); }

    // Smallest-id arc from u to v, if any.
    std::optional<ArcId> find_arc(VertexId u, VertexId v) const {
        for (ArcId a : out(u))
            if (head(a) == v) return a;
        return std::nullopt;
    }

    VertexId max_vertex_id() const { return verts_.empty() ? -1 : verts_.back(); }
    ArcId max_arc_id() const { return arcs_.empty() ? -1 : arcs_.back(); }

private:
    friend class DigraphBuilder;

    bool allow_parallel_ = false;
    std::vector<VertexId> verts_;                      // ascending
    std::vector<ArcId> arcs_;                          // ascending
    std::vector<std::pair<VertexId, VertexId>> ends_;  // (tail, head), parallel to arcs_
    std::vector<std::vector<ArcId>> out_;              // parallel to verts_
    std::vector<std::vector<ArcId>> in_;               // parallel to verts_
};

class DigraphBuilder {
public:
    explicit DigraphBuilder(bool allow_parallel = false) { d_.allow_parallel_ = allow_parallel; }

    DigraphBuilder& add_vertex(VertexId v) {
        if (v < 0) throw InputError("vertex ids must be non-negative, got " + std::to_string(v));
        pending_verts_.push_back(v);
        return *this;
    }

    DigraphBuilder& add_arc(ArcId a, VertexId tail, VertexId head) {
        if (a < 0) throw InputError("arc ids must be non-negative, got " + std::to_string(a));
        if (tail == head) throw InputError("self-loop at vertex " + std::to_string(tail));
        pending_arcs_.push_back({a, {tail, head}});
        return *this;
    }

    Digraph build() {
        std::sort(pending_verts_.begin(), pending_verts_.end());
        for (std::size_t i = 1; i < pending_verts_.size(); ++i)
            if (pending_verts_[i] == pending_verts_[i - 1])
                throw InputError("duplicate vertex id " + std::to_string(pending_verts_[i]));
        d_.verts_ = std::move(pending_verts_);

        std::sort(pending_arcs_.begin(), pending_arcs_.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < pending_arcs_.size(); ++i)
            if (pending_arcs_[i].first == pending_arcs_[i - 1].first)
                throw InputError("duplicate arc id " + std::to_string(pending_arcs_[i].first));

        d_.out_.assign(d_.verts_.size(), {});
        d_.in_.assign(d_.verts_.size(), {});
        d_.arcs_.reserve(pending_arcs_.size());
        d_.ends_.reserve(pending_arcs_.size());
        for (const auto& [a, th] : pending_arcs_) {
            if (!d_.has_vertex(th.first))
                throw InputError("arc " + std::to_string(a) + " references missing vertex " + std::to_string(th.first));
            if (!d_.has_vertex(th.second))
                throw InputError("arc " + std::to_string(a) + " references missing vertex " + std::to_string(th.second));
            d_.arcs_.push_back(a);
            d_.ends_.push_back(th);
            d_.out_[d_.vertex_index(th.first)].push_back(a);
            d_.in_[d_.vertex_index(th.second)].push_back(a);
        }
        if (!d_.allow_parallel_) {
            for (std::size_t vi = 0; vi < d_.verts_.size(); ++vi) {
                std::vector<VertexId> seen;
                for (ArcId a : d_.out_[vi]) seen.push_back(d_.head(a));
                std::sort(seen.begin(), seen.end());
                if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
                    throw InputError("parallel arcs out of vertex " + std::to_string(d_.verts_[vi]));
            }
        }
        return std::move(d_);
    }

private:
    Digraph d_;
    std::vector<VertexId> pending_verts_;
    std::vector<std::pair<ArcId, std::pair<VertexId, VertexId>>> pending_arcs_;
};

inline Digraph Digraph::of(std::vector<VertexId> vertices,
                           const std::vector<std::pair<VertexId, VertexId>>& arcs,
                           bool allow_parallel) {
    DigraphBuilder b(allow_parallel);
    for (VertexId v : vertices) b.add_vertex(v);
    ArcId a = 0;
    for (auto [t, h] : arcs) b.add_arc(a++, t, h);
    return b.build();
}

// Re-checks structural invariants on an already-built digraph (deserialized data).
inline void validate_digraph(const Digraph& d) {
    for (ArcId a : d.arcs()) {
        auto [t, h] = d.endpoints(a);
        if (t == h) throw InputError("self-loop at vertex " + std::to_string(t));
        if (!d.has_vertex(t) || !d.has_vertex(h))
            throw InputError("arc " + std::to_string(a) + " references a missing vertex");
    }
    if (!d.allows_parallel()) {
        for (VertexId v : d.vertices()) {
            std::vector<VertexId> seen;
            for (ArcId a : d.out(v)) seen.push_back(d.head(a));
            std::sort(seen.begin(), seen.end());
            if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
                throw InputError("parallel arcs out of vertex " + std::to_string(v));
        }
    }
}

// A digraph with a total arc coloring.
struct ArcColoredDigraph {
    Digraph graph;
    std::vector<ColorId> colors;  // aligned with graph.arcs()

    ColorId color_of(ArcId a) const { return colors[graph.arc_index(a)]; }
};

inline ArcColoredDigraph arc_colored(Digraph d, std::vector<ColorId> colors) {
    if (colors.size() != d.arc_count())
        throw InputError("arc coloring must cover every arc exactly once");
    for (ColorId c : colors)
        if (c < 0) throw InputError("color ids must be non-negative");
    return {std::move(d), std::move(colors)};
}

inline void validate_arc_colored(const ArcColoredDigraph& d) {
    validate_digraph(d.graph);
    if (d.colors.size() != d.graph.arc_count())
        throw InputError("arc coloring must cover every arc exactly once");
    for (ColorId c : d.colors)
        if (c < 0) throw InputError("color ids must be non-negative");
}

// A digraph together with a perfect "matching" of arcs: every vertex has
// exactly one outgoing and one incoming matching arc, and the matching is
// closed under arc reversal, so it behaves like a set of undirected matched
// edges traversable in both directions.
struct MatchedDigraph {
    Digraph graph;
    std::vector<ArcId> matching;  // ascending

    bool matched(ArcId a) const {
        return std::binary_search(matching.begin(), matching.end(), a);
    }
};

inline void validate_matched_digraph(const MatchedDigraph& md) {
    validate_digraph(md.graph);
    const Digraph& d = md.graph;
    std::vector<ArcId> sorted = md.matching;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InputError("matching lists an arc twice");
    if (sorted != md.matching) throw InputError("matching arcs must be listed in ascending order");
    for (ArcId a : md.matching)
        if (!d.has_arc(a)) throw InputError("matching references unknown arc " + std::to_string(a));
    std::vector<int> out_m(d.vertex_count(), 0), in_m(d.vertex_count(), 0);
    for (ArcId a : md.matching) {
        ++out_m[d.vertex_index(d.tail(a))];
        ++in_m[d.vertex_index(d.head(a))];
    }
    for (std::size_t i = 0; i < d.vertex_count(); ++i)
        if (out_m[i] != 1 || in_m[i] != 1)
            throw InputError("every vertex needs exactly one outgoing and one incoming matching arc");
    for (ArcId a : md.matching) {
        // Closure under reversal: some matching arc runs head -> tail.
        bool found = false;
        for (ArcId r : d.out(d.head(a)))
            if (d.head(r) == d.tail(a) && md.matched(r)) { found = true; break; }
        if (!found)
            throw InputError("matching must contain the reverse of arc " + std::to_string(a));
    }
}

inline MatchedDigraph matched_digraph(Digraph d, std::vector<ArcId> matching) {
    std::sort(matching.begin(), matching.end());
    MatchedDigraph md{std::move(d), std::move(matching)};
    validate_matched_digraph(md);
    return md;
}

}  // namespace cpf
