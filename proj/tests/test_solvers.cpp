#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "cpf/solvers.hpp"
#include "support/searches.hpp"

using namespace cpf;
using namespace testsupport;

namespace {

// Random properly colored directed walk (arc repeats allowed); independent
// input generator for the walk-to-trail excision tests.
std::optional<Certificate> random_pc_walk(std::mt19937_64& rng, const ArcColoredDigraph& d,
                                          int max_len) {
    if (d.graph.vertex_count() == 0) return std::nullopt;
    VertexId cur = d.graph.vertex_at(rng() % d.graph.vertex_count());
    std::vector<VertexId> vs{cur};
    std::vector<ArcId> as;
    for (int step = 0; step < max_len; ++step) {
        std::vector<ArcId> options;
        for (ArcId a : d.graph.out(cur))
            if (as.empty() || d.color_of(a) != d.color_of(as.back())) options.push_back(a);
        if (options.empty()) break;
        ArcId a = options[rng() % options.size()];
        as.push_back(a);
        cur = d.graph.head(a);
        vs.push_back(cur);
    }
    if (as.empty() || vs.front() == vs.back()) return std::nullopt;
    return make_walk_certificate(ConstraintKind::pc_directed, std::move(vs), std::move(as),
                                 false);
}

// Pattern detector written independently of the library: which of the three
// hard four-vertex shapes (if any) do these four vertices induce in `sub`?
std::optional<ForbiddenPattern> induced_pattern(const Graph& sub,
                                                const std::array<VertexId, 4>& w) {
    int deg[4] = {0, 0, 0, 0};
    int m = 0;
    for (int x = 0; x < 4; ++x)
        for (int y = x + 1; y < 4; ++y)
            if (sub.has_vertex(w[static_cast<std::size_t>(x)]) &&
                sub.has_vertex(w[static_cast<std::size_t>(y)]) &&
                sub.find_edge(w[static_cast<std::size_t>(x)], w[static_cast<std::size_t>(y)])) {
                ++deg[x];
                ++deg[y];
                ++m;
            }
    std::array<int, 4> ds{deg[0], deg[1], deg[2], deg[3]};
    std::sort(ds.begin(), ds.end());
    if (m == 2 && ds == std::array<int, 4>{1, 1, 1, 1})
        return ForbiddenPattern::two_disjoint_edges;
    if (m == 3 && ds == std::array<int, 4>{1, 1, 2, 2}) return ForbiddenPattern::four_vertex_path;
    if (m == 4 && ds == std::array<int, 4>{1, 2, 2, 3})
        return ForbiddenPattern::triangle_with_pendant;
    return std::nullopt;
}

// Independent hardness scan: some color class induces one of the three
// four-vertex shapes.
bool any_class_has_witness(const EdgeColoredGraph& g) {
    for (const auto& [color, edges] : color_classes(g)) {
        std::set<VertexId> covered;
        for (EdgeId e : edges) {
            auto [u, v] = g.graph.endpoints(e);
            covered.insert(u);
            covered.insert(v);
        }
        GraphBuilder cb;
        for (VertexId v : covered) cb.add_vertex(v);
        for (EdgeId e : edges) {
            auto [u, v] = g.graph.endpoints(e);
            cb.add_edge(e, u, v);
        }
        Graph sub = cb.build();
        std::vector<VertexId> vs(covered.begin(), covered.end());
        for (std::size_t i = 0; i < vs.size(); ++i)
            for (std::size_t j = i + 1; j < vs.size(); ++j)
                for (std::size_t k = j + 1; k < vs.size(); ++k)
                    for (std::size_t l = k + 1; l < vs.size(); ++l)
                        if (induced_pattern(sub, {vs[i], vs[j], vs[k], vs[l]})) return true;
    }
    return false;
}

Graph path_graph(int n) {
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(i);
    for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i, i + 1);
    return b.build();
}

}  // namespace

// ---------------------------------------------------------------------------
// Compatible trails between fixed endpoints
// ---------------------------------------------------------------------------

TEST_CASE("two-edge path with the turn allowed yields the trail",
          "[solvers][compatible-trail]") {
    Graph g = path_graph(3);
    TransitionSystem t = transition_system(g, {{1, 0, 1}});
    auto c = compatible_trail(g, t, 0, 2);
    REQUIRE(c.has_value());
    CHECK(c->vertices == std::vector<VertexId>{0, 1, 2});
    CHECK(c->edges == std::vector<EdgeId>{0, 1});
    CHECK(c->kind == WalkKind::path);
    validate_certificate(g, t, *c);
}

TEST_CASE("two-edge path with the turn forbidden has no trail",
          "[solvers][compatible-trail]") {
    Graph g = path_graph(3);
    TransitionSystem t = transition_system(g, {});
    CHECK_FALSE(compatible_trail(g, t, 0, 2).has_value());
    // The single edges are still reachable individually.
    CHECK(compatible_trail(g, t, 0, 1).has_value());
    CHECK(compatible_trail(g, t, 1, 2).has_value());
}

TEST_CASE("trail query endpoint validation", "[solvers][compatible-trail]") {
    Graph g = path_graph(3);
    TransitionSystem t = full_transition_system(g);
    CHECK_THROWS_AS(compatible_trail(g, t, 1, 1), InputError);
    CHECK_THROWS_AS(compatible_trail(g, t, 0, 9), InputError);
    CHECK_THROWS_AS(compatible_trail(g, t, 9, 0), InputError);
    CHECK_THROWS_AS(compatible_trail(g, t, 0, 2, EdgeId{77}), InputError);
}

TEST_CASE("trail search agrees with exhaustive enumeration",
          "[solvers][compatible-trail][oracle]") {
    std::mt19937_64 rng(0xA11CE);
    int found = 0, absent = 0;
    for (int iter = 0; iter < 160; ++iter) {
        Graph g = random_graph(rng, 5, 40);
        if (g.edge_count() > 6) continue;
        TransitionSystem t = random_subsystem(rng, g, 70);
        for (VertexId s : g.vertices())
            for (VertexId tgt : g.vertices()) {
                if (s == tgt) continue;
                bool expect = compatible_trail_exists_brute(g, t, s, tgt);
                auto got = compatible_trail(g, t, s, tgt);
                REQUIRE(got.has_value() == expect);
                if (got) {
                    validate_certificate(g, t, *got);
                    CHECK(got->vertices.front() == s);
                    CHECK(got->vertices.back() == tgt);
                    std::set<EdgeId> uniq(got->edges.begin(), got->edges.end());
                    CHECK(uniq.size() == got->edges.size());
                    ++found;
                } else {
                    ++absent;
                }
            }
    }
    CHECK(found > 200);
    CHECK(absent > 200);
}

TEST_CASE("prescribed-edge trail search agrees with exhaustive enumeration",
          "[solvers][compatible-trail][oracle]") {
    std::mt19937_64 rng(0xBEEF5);
    int found = 0, absent = 0, rejected = 0;
    for (int iter = 0; iter < 200; ++iter) {
        Graph g = random_graph(rng, 5, 35);
        if (g.edge_count() > 6 || g.edge_count() == 0) continue;
        TransitionSystem t = random_subsystem(rng, g, 60);
        bool closed = find_compatible_closed_trail_brute(g, t).has_value();
        VertexId s = g.vertex_at(rng() % g.vertex_count());
        VertexId tgt = g.vertex_at(rng() % g.vertex_count());
        if (s == tgt) continue;
        EdgeId e = g.edge_at(rng() % g.edge_count());
        if (closed) {
            CHECK_THROWS_AS(compatible_trail(g, t, s, tgt, e), PreconditionError);
            ++rejected;
            continue;
        }
        bool expect = compatible_trail_exists_brute(g, t, s, tgt, e);
        auto got = compatible_trail(g, t, s, tgt, e);
        REQUIRE(got.has_value() == expect);
        if (got) {
            validate_certificate(g, t, *got);
            CHECK(got->vertices.front() == s);
            CHECK(got->vertices.back() == tgt);
            CHECK(std::count(got->edges.begin(), got->edges.end(), e) == 1);
            ++found;
        } else {
            ++absent;
        }
    }
    CHECK(found > 15);
    CHECK(absent > 40);
    CHECK(rejected > 10);
}

// ---------------------------------------------------------------------------
// Compatible closed trails
// ---------------------------------------------------------------------------

TEST_CASE("triangle with all transitions has the triangle as closed trail",
          "[solvers][closed-trail]") {
    GraphBuilder b;
    for (int i = 0; i < 3; ++i) b.add_vertex(i);
    b.add_edge(0, 0, 1).add_edge(1, 1, 2).add_edge(2, 2, 0);
    Graph g = b.build();
    TransitionSystem t = full_transition_system(g);
    auto c = compatible_closed_trail(g, t);
    REQUIRE(c.has_value());
    CHECK(c->kind == WalkKind::cycle);
    std::set<EdgeId> es(c->edges.begin(), c->edges.end());
    CHECK(es == std::set<EdgeId>{0, 1, 2});
    validate_certificate(g, t, *c);
}

TEST_CASE("trees admit no closed trail", "[solvers][closed-trail]") {
    Graph g = path_graph(5);
    CHECK_FALSE(compatible_closed_trail(g, full_transition_system(g)).has_value());
}

TEST_CASE("closed-trail search agrees with exhaustive enumeration",
          "[solvers][closed-trail][oracle]") {
    std::mt19937_64 rng(0xC105ED);
    int found = 0;
    for (int iter = 0; iter < 150; ++iter) {
        Graph g = random_graph(rng, 5, 45);
        if (g.edge_count() > 6) continue;
        TransitionSystem t = random_subsystem(rng, g, 75);
        bool expect = find_compatible_closed_trail_brute(g, t).has_value();
        auto got = compatible_closed_trail(g, t);
        REQUIRE(got.has_value() == expect);
        if (got) {
            validate_certificate(g, t, *got);
            CHECK(is_closed(got->kind));
            ++found;
        }
    }
    CHECK(found > 20);
}

// ---------------------------------------------------------------------------
// Properly colored searches on edge-colored graphs
// ---------------------------------------------------------------------------

TEST_CASE("alternating two-colored path is found end to end", "[solvers][pc]") {
    GraphBuilder b;
    for (int i = 0; i < 5; ++i) b.add_vertex(i);
    for (int i = 0; i < 4; ++i) b.add_edge(i, i, i + 1);
    EdgeColoredGraph g = edge_colored(b.build(), {0, 1, 0, 1});
    auto c = pc_search(g, WalkKind::path, 0, 4);
    REQUIRE(c.has_value());
    CHECK(c->vertices == std::vector<VertexId>{0, 1, 2, 3, 4});
    validate_certificate(g, *c);
}

TEST_CASE("monochromatic triangle has no properly colored cycle", "[solvers][pc]") {
    GraphBuilder b;
    for (int i = 0; i < 3; ++i) b.add_vertex(i);
    b.add_edge(0, 0, 1).add_edge(1, 1, 2).add_edge(2, 2, 0);
    EdgeColoredGraph g = edge_colored(b.build(), {7, 7, 7});
    CHECK_FALSE(pc_search(g, WalkKind::cycle).has_value());
}

TEST_CASE("properly colored query kinds are validated", "[solvers][pc]") {
    GraphBuilder b;
    b.add_vertex(0).add_vertex(1);
    b.add_edge(0, 0, 1);
    EdgeColoredGraph g = edge_colored(b.build(), {0});
    CHECK_THROWS_AS(pc_search(g, WalkKind::path), InputError);
    CHECK_THROWS_AS(pc_search(g, WalkKind::path, 0, 0), InputError);
    CHECK_THROWS_AS(pc_search(g, WalkKind::cycle, 0, 1), InputError);
    CHECK_THROWS_AS(pc_search(g, WalkKind::walk, 0, 1), InputError);
    CHECK_THROWS_AS(pc_search(g, WalkKind::path, 0, 5), InputError);
}

TEST_CASE("properly colored searches agree with exhaustive enumeration for every kind",
          "[solvers][pc][oracle]") {
    std::mt19937_64 rng(0x9C12);
    int paths = 0, cycles = 0, trails = 0, closed = 0;
    // Path and cycle kinds on denser graphs (vertex-simple brute force stays
    // cheap regardless of edge count).
    for (int iter = 0; iter < 120; ++iter) {
        EdgeColoredGraph g = random_colored(rng, 5 + iter % 2, 55, 2 + iter % 2);

        bool cyc_expect = find_pc_cycle_brute(g).has_value();
        auto cyc = pc_search(g, WalkKind::cycle);
        REQUIRE(cyc.has_value() == cyc_expect);
        if (cyc) {
            validate_certificate(g, *cyc);
            ++cycles;
        }

        for (VertexId s : g.graph.vertices())
            for (VertexId t : g.graph.vertices()) {
                if (s == t) continue;
                bool p_expect = pc_path_exists_brute(g, s, t);
                auto p = pc_search(g, WalkKind::path, s, t);
                REQUIRE(p.has_value() == p_expect);
                if (p) {
                    validate_certificate(g, *p);
                    CHECK(p->vertices.front() == s);
                    CHECK(p->vertices.back() == t);
                    ++paths;
                }
            }
    }
    // Trail kinds on edge-capped graphs (edge-distinct brute force).
    for (int iter = 0; iter < 250; ++iter) {
        EdgeColoredGraph g = random_colored(rng, 5, 45, 1 + iter % 3);
        if (g.graph.edge_count() > 6) continue;
        TransitionSystem induced = induced_transition_system(g);

        bool ct_expect = find_compatible_closed_trail_brute(g.graph, induced).has_value();
        auto ct = pc_search(g, WalkKind::closed_trail);
        REQUIRE(ct.has_value() == ct_expect);
        if (ct) {
            validate_certificate(g, *ct);
            ++closed;
        }

        for (VertexId s : g.graph.vertices())
            for (VertexId t : g.graph.vertices()) {
                if (s == t) continue;
                bool t_expect = compatible_trail_exists_brute(g.graph, induced, s, t);
                auto tr = pc_search(g, WalkKind::trail, s, t);
                REQUIRE(tr.has_value() == t_expect);
                if (tr) {
                    validate_certificate(g, *tr);
                    CHECK(tr->vertices.front() == s);
                    CHECK(tr->vertices.back() == t);
                    ++trails;
                }
            }
    }
    CHECK(paths > 300);
    CHECK(cycles > 30);
    CHECK(trails > 150);
    CHECK(closed > 10);
}

// ---------------------------------------------------------------------------
// Locally 2-colored searches
// ---------------------------------------------------------------------------

TEST_CASE("directed path encoded as sides yields the compatible path",
          "[solvers][local2]") {
    DigraphBuilder b(false);
    for (int i = 0; i < 4; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 2).add_arc(2, 2, 3);
    LocallyTwoColoredGraph l = digraph_to_local2(b.build());
    auto c = local2_search(l, WalkKind::path, 0, 3);
    REQUIRE(c.has_value());
    CHECK(c->vertices == std::vector<VertexId>{0, 1, 2, 3});
    validate_certificate(l, *c);
    // Side compatibility is symmetric, so the reversed path is compatible
    // too; it corresponds to reading the directed path backwards.
    CHECK(local2_search(l, WalkKind::path, 3, 0).has_value());
    // Two arcs leaving the same vertex meet it on the same side: no
    // compatible path may turn between them.
    DigraphBuilder fork(false);
    for (int i = 0; i < 3; ++i) fork.add_vertex(i);
    fork.add_arc(0, 0, 1).add_arc(1, 0, 2);
    LocallyTwoColoredGraph lf = digraph_to_local2(fork.build());
    CHECK_FALSE(local2_search(lf, WalkKind::path, 1, 2).has_value());
}

TEST_CASE("prescribed vertex on the only route is honored", "[solvers][local2]") {
    // 0 -> 1 -> 3 with a dead-end branch 0 -> 2.
    DigraphBuilder b(false);
    for (int i = 0; i < 4; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 3).add_arc(2, 0, 2);
    LocallyTwoColoredGraph l = digraph_to_local2(b.build());
    auto via1 = local2_search(l, WalkKind::path, 0, 3, 1);
    REQUIRE(via1.has_value());
    CHECK(std::count(via1->vertices.begin(), via1->vertices.end(), VertexId{1}) == 1);
    validate_certificate(l, *via1);
    CHECK_FALSE(local2_search(l, WalkKind::path, 0, 3, 2).has_value());
}

TEST_CASE("prescribed vertex is rejected when a compatible cycle exists",
          "[solvers][local2]") {
    DigraphBuilder b(true);
    for (int i = 0; i < 3; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 0).add_arc(2, 1, 2);
    LocallyTwoColoredGraph l = digraph_to_local2(b.build());
    REQUIRE(local2_search(l, WalkKind::cycle).has_value());
    CHECK_THROWS_AS(local2_search(l, WalkKind::path, 0, 2, 1), PreconditionError);
}

TEST_CASE("locally 2-colored query validation", "[solvers][local2]") {
    DigraphBuilder b(false);
    for (int i = 0; i < 3; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 2);
    LocallyTwoColoredGraph l = digraph_to_local2(b.build());
    CHECK_THROWS_AS(local2_search(l, WalkKind::path, 0, 0), InputError);
    CHECK_THROWS_AS(local2_search(l, WalkKind::path), InputError);
    CHECK_THROWS_AS(local2_search(l, WalkKind::cycle, 0, 2), InputError);
    CHECK_THROWS_AS(local2_search(l, WalkKind::trail, 0, 2), InputError);
    CHECK_THROWS_AS(local2_search(l, WalkKind::path, 0, 2, 0), InputError);
    CHECK_THROWS_AS(local2_search(l, WalkKind::path, 0, 2, 9), InputError);
}

TEST_CASE("locally 2-colored searches agree with exhaustive enumeration",
          "[solvers][local2][oracle]") {
    std::mt19937_64 rng(0x10CA1);
    int paths = 0, cycles = 0, vias = 0;
    for (int iter = 0; iter < 120; ++iter) {
        LocallyTwoColoredGraph l = random_local2(rng, 5, 55);

        bool cyc_expect = find_l2_cycle_brute(l).has_value();
        auto cyc = local2_search(l, WalkKind::cycle);
        REQUIRE(cyc.has_value() == cyc_expect);
        if (cyc) {
            validate_certificate(l, *cyc);
            ++cycles;
        }

        for (VertexId s : l.graph.vertices())
            for (VertexId t : l.graph.vertices()) {
                if (s == t) continue;
                bool expect = l2_path_exists_brute(l, s, t);
                auto got = local2_search(l, WalkKind::path, s, t);
                REQUIRE(got.has_value() == expect);
                if (got) {
                    validate_certificate(l, *got);
                    CHECK(got->vertices.front() == s);
                    CHECK(got->vertices.back() == t);
                    ++paths;
                }
            }

        if (!cyc_expect) {
            for (VertexId s : l.graph.vertices())
                for (VertexId t : l.graph.vertices()) {
                    if (s == t) continue;
                    for (VertexId via : l.graph.vertices()) {
                        if (via == s || via == t) continue;
                        bool expect = l2_path_exists_brute(l, s, t, via);
                        auto got = local2_search(l, WalkKind::path, s, t, via);
                        REQUIRE(got.has_value() == expect);
                        if (got) {
                            validate_certificate(l, *got);
                            CHECK(std::count(got->vertices.begin(), got->vertices.end(), via) ==
                                  1);
                            ++vias;
                        }
                    }
                }
        }
    }
    CHECK(paths > 200);
    CHECK(cycles > 15);
    CHECK(vias > 50);
}

// ---------------------------------------------------------------------------
// Color class dichotomy
// ---------------------------------------------------------------------------

TEST_CASE("single-edge classes are tractable with singleton parts",
          "[solvers][classify]") {
    GraphBuilder b;
    for (int i = 0; i < 4; ++i) b.add_vertex(i);
    b.add_edge(0, 0, 1).add_edge(1, 1, 2).add_edge(2, 2, 3);
    EdgeColoredGraph g = edge_colored(b.build(), {0, 1, 2});
    ClassVerdict v = classify_color_classes(g);
    REQUIRE(v.tractable());
    REQUIRE(v.partitions.size() == 3);
    for (const auto& p : v.partitions) {
        CHECK(p.parts.size() == 2);
        for (const auto& part : p.parts) CHECK(part.size() == 1);
    }
}

TEST_CASE("a class shaped as a four-vertex path is flagged hard",
          "[solvers][classify]") {
    GraphBuilder b;
    for (int i = 0; i < 4; ++i) b.add_vertex(i);
    b.add_edge(0, 0, 1).add_edge(1, 1, 2).add_edge(2, 2, 3);
    EdgeColoredGraph g = edge_colored(b.build(), {5, 5, 5});
    ClassVerdict v = classify_color_classes(g);
    REQUIRE_FALSE(v.tractable());
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->color == 5);
    CHECK(v.witness->pattern == ForbiddenPattern::four_vertex_path);
    std::array<VertexId, 4> w = v.witness->vertices;
    std::sort(w.begin(), w.end());
    CHECK(w == std::array<VertexId, 4>{0, 1, 2, 3});
}

TEST_CASE("disjoint-pair and pendant-triangle classes are recognized",
          "[solvers][classify]") {
    {
        GraphBuilder b;
        for (int i = 0; i < 4; ++i) b.add_vertex(i);
        b.add_edge(0, 0, 1).add_edge(1, 2, 3);
        EdgeColoredGraph g = edge_colored(b.build(), {3, 3});
        ClassVerdict v = classify_color_classes(g);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->pattern == ForbiddenPattern::two_disjoint_edges);
    }
    {
        GraphBuilder b;
        for (int i = 0; i < 4; ++i) b.add_vertex(i);
        b.add_edge(0, 0, 1).add_edge(1, 1, 2).add_edge(2, 2, 0).add_edge(3, 2, 3);
        EdgeColoredGraph g = edge_colored(b.build(), {1, 1, 1, 1});
        ClassVerdict v = classify_color_classes(g);
        REQUIRE(v.witness.has_value());
        CHECK(v.witness->pattern == ForbiddenPattern::triangle_with_pendant);
    }
}

TEST_CASE("classification matches an independent witness scan",
          "[solvers][classify][oracle]") {
    std::mt19937_64 rng(0xC1A55);
    int tractable = 0, hard = 0;
    for (int iter = 0; iter < 250; ++iter) {
        EdgeColoredGraph g = iter % 3 == 0 ? random_multipartite_classes(rng, 3 + iter % 6)
                                           : random_colored(rng, 6, 40, 1 + iter % 3);
        ClassVerdict v = classify_color_classes(g);
        bool expect_hard = any_class_has_witness(g);
        REQUIRE(v.tractable() == !expect_hard);
        if (v.tractable()) {
            ++tractable;
            auto classes = color_classes(g);
            REQUIRE(v.partitions.size() == classes.size());
            for (std::size_t ci = 0; ci < classes.size(); ++ci) {
                const auto& [color, edges] = classes[ci];
                const auto& part = v.partitions[ci];
                CHECK(part.color == color);
                // Cross-part pairs are exactly the class edges.
                std::set<VertexId> covered;
                for (EdgeId e : edges) {
                    auto [u, vv] = g.graph.endpoints(e);
                    covered.insert(u);
                    covered.insert(vv);
                }
                std::map<VertexId, int> part_of;
                std::size_t listed = 0;
                for (std::size_t pi = 0; pi < part.parts.size(); ++pi)
                    for (VertexId x : part.parts[pi]) {
                        part_of[x] = static_cast<int>(pi);
                        ++listed;
                    }
                REQUIRE(listed == covered.size());
                std::set<std::pair<VertexId, VertexId>> class_pairs;
                for (EdgeId e : edges) {
                    auto [u, vv] = g.graph.endpoints(e);
                    class_pairs.insert({std::min(u, vv), std::max(u, vv)});
                }
                for (VertexId u : covered)
                    for (VertexId vv : covered) {
                        if (u >= vv) continue;
                        bool cross = part_of.at(u) != part_of.at(vv);
                        CHECK(class_pairs.count({u, vv}) == (cross ? 1u : 0u));
                    }
            }
        } else {
            ++hard;
            // The witness really induces the claimed pattern inside its class.
            const auto& w = *v.witness;
            GraphBuilder cb;
            std::set<VertexId> covered;
            std::vector<std::pair<EdgeId, std::pair<VertexId, VertexId>>> class_edges;
            for (const auto& [color, edges] : color_classes(g)) {
                if (color != w.color) continue;
                for (EdgeId e : edges) {
                    auto [u, vv] = g.graph.endpoints(e);
                    covered.insert(u);
                    covered.insert(vv);
                    class_edges.push_back({e, {u, vv}});
                }
            }
            for (VertexId x : covered) cb.add_vertex(x);
            for (const auto& [e, uv] : class_edges) cb.add_edge(e, uv.first, uv.second);
            Graph sub = cb.build();
            auto pat = induced_pattern(sub, w.vertices);
            REQUIRE(pat.has_value());
            CHECK(*pat == w.pattern);
        }
    }
    CHECK(tractable > 60);
    CHECK(hard > 60);
}

// ---------------------------------------------------------------------------
// Rainbow search
// ---------------------------------------------------------------------------

TEST_CASE("three distinctly colored edges in a row form a rainbow path",
          "[solvers][rainbow]") {
    GraphBuilder b;
    for (int i = 0; i < 4; ++i) b.add_vertex(i);
    b.add_edge(0, 0, 1).add_edge(1, 1, 2).add_edge(2, 2, 3);
    EdgeColoredGraph g = edge_colored(b.build(), {0, 1, 2});
    SearchOutcome out = rainbow_search(g, WalkKind::path, 0, 3);
    REQUIRE(out.status == SearchStatus::found);
    REQUIRE(out.certificate.has_value());
    CHECK(out.certificate->vertices == std::vector<VertexId>{0, 1, 2, 3});
    validate_certificate(g, *out.certificate);
}

TEST_CASE("disjoint-pair classes blocking every route give an exact absence",
          "[solvers][rainbow]") {
    // One class = {0-1, 2-3}: hard shape, and no path connects 0 to 3 at all.
    GraphBuilder b;
    for (int i = 0; i < 4; ++i) b.add_vertex(i);
    b.add_edge(0, 0, 1).add_edge(1, 2, 3);
    EdgeColoredGraph g = edge_colored(b.build(), {3, 3});
    REQUIRE_FALSE(classify_color_classes(g).tractable());
    SearchOutcome out = rainbow_search(g, WalkKind::path, 0, 3);
    CHECK(out.status == SearchStatus::absent);
    CHECK_FALSE(out.certificate.has_value());
}

TEST_CASE("complete graph colored by perfect matchings: cycle query matches brute force",
          "[solvers][rainbow]") {
    GraphBuilder b;
    for (int i = 0; i < 4; ++i) b.add_vertex(i);
    b.add_edge(0, 0, 1).add_edge(1, 2, 3);   // class 0
    b.add_edge(2, 0, 2).add_edge(3, 1, 3);   // class 1
    b.add_edge(4, 0, 3).add_edge(5, 1, 2);   // class 2
    EdgeColoredGraph g = edge_colored(b.build(), {0, 0, 1, 1, 2, 2});
    REQUIRE_FALSE(classify_color_classes(g).tractable());
    SearchOutcome out = rainbow_search(g, WalkKind::cycle);
    REQUIRE((out.status == SearchStatus::found) ==
            find_rainbow_cycle_brute(g).has_value());
    REQUIRE(out.status == SearchStatus::found);
    validate_certificate(g, *out.certificate);
    CHECK(out.certificate->kind == WalkKind::cycle);
}

TEST_CASE("rainbow query kinds are validated", "[solvers][rainbow]") {
    GraphBuilder b;
    b.add_vertex(0).add_vertex(1);
    b.add_edge(0, 0, 1);
    EdgeColoredGraph g = edge_colored(b.build(), {0});
    CHECK_THROWS_AS(rainbow_search(g, WalkKind::path), InputError);
    CHECK_THROWS_AS(rainbow_search(g, WalkKind::path, 0, 0), InputError);
    CHECK_THROWS_AS(rainbow_search(g, WalkKind::cycle, 0, 1), InputError);
    CHECK_THROWS_AS(rainbow_search(g, WalkKind::trail, 0, 1), InputError);
}

TEST_CASE("multipartite classes answer exactly even with a unit budget",
          "[solvers][rainbow][oracle]") {
    std::mt19937_64 rng(0xAB07);
    int paths = 0, cycles = 0;
    // Disjoint multipartite chunks: rainbow paths appear inside chunks, and
    // every cycle is confined to a single class, so cycle queries must come
    // back exactly absent.
    for (int iter = 0; iter < 100; ++iter) {
        EdgeColoredGraph g = random_multipartite_classes(rng, 4 + iter % 5);
        REQUIRE(classify_color_classes(g).tractable());

        SearchOutcome cyc = rainbow_search(g, WalkKind::cycle, std::nullopt, std::nullopt, 1);
        REQUIRE(cyc.status == SearchStatus::absent);
        REQUIRE_FALSE(find_rainbow_cycle_brute(g).has_value());

        for (VertexId s : g.graph.vertices())
            for (VertexId t : g.graph.vertices()) {
                if (s == t) continue;
                SearchOutcome out = rainbow_search(g, WalkKind::path, s, t, 1);
                REQUIRE(out.status != SearchStatus::budget_exhausted);
                bool expect = find_rainbow_path_brute(g, s, t).has_value();
                REQUIRE((out.status == SearchStatus::found) == expect);
                if (out.certificate) {
                    validate_certificate(g, *out.certificate);
                    CHECK(out.certificate->vertices.front() == s);
                    CHECK(out.certificate->vertices.back() == t);
                    ++paths;
                }
            }
    }
    // All-distinct colors: single-edge classes are trivially multipartite,
    // and rainbow cycles reduce to plain cycles, so positives abound.
    for (int iter = 0; iter < 100; ++iter) {
        Graph base = random_graph(rng, 5 + iter % 2, 50);
        std::vector<ColorId> cs;
        for (std::size_t i = 0; i < base.edge_count(); ++i)
            cs.push_back(static_cast<ColorId>(i));
        EdgeColoredGraph g = edge_colored(std::move(base), std::move(cs));
        REQUIRE(classify_color_classes(g).tractable());

        SearchOutcome cyc = rainbow_search(g, WalkKind::cycle, std::nullopt, std::nullopt, 1);
        REQUIRE(cyc.status != SearchStatus::budget_exhausted);
        REQUIRE((cyc.status == SearchStatus::found) ==
                find_rainbow_cycle_brute(g).has_value());
        if (cyc.certificate) {
            validate_certificate(g, *cyc.certificate);
            ++cycles;
        }

        for (VertexId s : g.graph.vertices())
            for (VertexId t : g.graph.vertices()) {
                if (s >= t) continue;
                SearchOutcome out = rainbow_search(g, WalkKind::path, s, t, 1);
                REQUIRE(out.status != SearchStatus::budget_exhausted);
                bool expect = find_rainbow_path_brute(g, s, t).has_value();
                REQUIRE((out.status == SearchStatus::found) == expect);
                if (out.certificate) {
                    validate_certificate(g, *out.certificate);
                    ++paths;
                }
            }
    }
    CHECK(paths > 300);
    CHECK(cycles > 30);
}

TEST_CASE("hard classes still answer exactly under a generous budget",
          "[solvers][rainbow][oracle]") {
    std::mt19937_64 rng(0x4A12D);
    int hard_seen = 0, paths = 0, cycles = 0;
    for (int iter = 0; iter < 150; ++iter) {
        EdgeColoredGraph g = random_colored(rng, 6, 45, 1 + iter % 4);
        if (!classify_color_classes(g).tractable()) ++hard_seen;

        SearchOutcome cyc = rainbow_search(g, WalkKind::cycle);
        REQUIRE(cyc.status != SearchStatus::budget_exhausted);
        REQUIRE((cyc.status == SearchStatus::found) ==
                find_rainbow_cycle_brute(g).has_value());
        if (cyc.certificate) {
            validate_certificate(g, *cyc.certificate);
            ++cycles;
        }

        for (VertexId s : g.graph.vertices())
            for (VertexId t : g.graph.vertices()) {
                if (s >= t) continue;
                SearchOutcome out = rainbow_search(g, WalkKind::path, s, t);
                REQUIRE(out.status != SearchStatus::budget_exhausted);
                bool expect = find_rainbow_path_brute(g, s, t).has_value();
                REQUIRE((out.status == SearchStatus::found) == expect);
                if (out.certificate) {
                    validate_certificate(g, *out.certificate);
                    ++paths;
                }
            }
    }
    CHECK(hard_seen > 40);
    CHECK(paths > 300);
    CHECK(cycles > 15);
}

TEST_CASE("a tiny budget on a hard instance reports exhaustion, not absence",
          "[solvers][rainbow]") {
    // Two-colored complete graph on six vertices (classes are large and not
    // complete multipartite) plus an unreachable target vertex.
    GraphBuilder b;
    for (int i = 0; i < 7; ++i) b.add_vertex(i);
    EdgeId e = 0;
    std::vector<ColorId> cs;
    for (int u = 0; u < 6; ++u)
        for (int v = u + 1; v < 6; ++v) {
            b.add_edge(e, u, v);
            cs.push_back(static_cast<ColorId>(e % 2));
            ++e;
        }
    EdgeColoredGraph g = edge_colored(b.build(), std::move(cs));
    REQUIRE_FALSE(classify_color_classes(g).tractable());
    SearchOutcome out = rainbow_search(g, WalkKind::path, 0, 6, 3);
    CHECK(out.status == SearchStatus::budget_exhausted);
    CHECK_FALSE(out.certificate.has_value());
    // The same query with room to finish proves absence.
    SearchOutcome full = rainbow_search(g, WalkKind::path, 0, 6);
    CHECK(full.status == SearchStatus::absent);
}

// ---------------------------------------------------------------------------
// Properly colored directed trails
// ---------------------------------------------------------------------------

TEST_CASE("single arc is the shortest properly colored trail", "[solvers][pc-directed]") {
    DigraphBuilder b(false);
    b.add_vertex(0).add_vertex(1);
    b.add_arc(0, 0, 1);
    ArcColoredDigraph d = arc_colored(b.build(), {4});
    auto c = pc_directed_trail(d, 0, 1);
    REQUIRE(c.has_value());
    CHECK(c->edges == std::vector<ArcId>{0});
    validate_certificate(d, *c);
}

TEST_CASE("two consecutive same-colored arcs admit no trail", "[solvers][pc-directed]") {
    DigraphBuilder b(false);
    for (int i = 0; i < 3; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 2);
    ArcColoredDigraph d = arc_colored(b.build(), {0, 0});
    CHECK_FALSE(pc_directed_trail(d, 0, 2).has_value());
}

TEST_CASE("trail that must revisit a vertex is still found", "[solvers][pc-directed]") {
    // Direct route 0 -> 1 -> 3 clashes on color; the detour through 2 revisits
    // vertex 1 but never repeats an arc.
    DigraphBuilder b(false);
    for (int i = 0; i < 4; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 2).add_arc(2, 2, 1).add_arc(3, 1, 3);
    ArcColoredDigraph d = arc_colored(b.build(), {0, 1, 2, 0});
    auto c = pc_directed_trail(d, 0, 3);
    REQUIRE(c.has_value());
    CHECK(c->vertices == std::vector<VertexId>{0, 1, 2, 1, 3});
    CHECK(c->kind == WalkKind::trail);
    validate_certificate(d, *c);
    // The vertex-simple variant really is absent.
    CHECK(hard_directed_search(d, 0, 3).status == SearchStatus::absent);
}

TEST_CASE("directed trail endpoints are validated", "[solvers][pc-directed]") {
    DigraphBuilder b(false);
    b.add_vertex(0).add_vertex(1);
    b.add_arc(0, 0, 1);
    ArcColoredDigraph d = arc_colored(b.build(), {0});
    CHECK_THROWS_AS(pc_directed_trail(d, 0, 0), InputError);
    CHECK_THROWS_AS(pc_directed_trail(d, 0, 9), InputError);
}

TEST_CASE("directed trail search returns a minimum-length walk",
          "[solvers][pc-directed][oracle]") {
    std::mt19937_64 rng(0xD12EC7);
    int found = 0, absent = 0;
    for (int iter = 0; iter < 150; ++iter) {
        ArcColoredDigraph d = random_arc_colored(rng, 5, 30, 2 + iter % 2);
        for (VertexId s : d.graph.vertices())
            for (VertexId t : d.graph.vertices()) {
                if (s == t) continue;
                auto expect = pc_dir_trail_min_brute(d, s, t);
                auto got = pc_directed_trail(d, s, t);
                REQUIRE(got.has_value() == expect.has_value());
                if (got) {
                    validate_certificate(d, *got);
                    CHECK(got->edges.size() == *expect);
                    CHECK(got->vertices.front() == s);
                    CHECK(got->vertices.back() == t);
                    std::set<ArcId> uniq(got->edges.begin(), got->edges.end());
                    CHECK(uniq.size() == got->edges.size());
                    ++found;
                } else {
                    ++absent;
                }
            }
    }
    CHECK(found > 300);
    CHECK(absent > 300);
}

// ---------------------------------------------------------------------------
// Walk-to-trail excision
// ---------------------------------------------------------------------------

TEST_CASE("a walk that is already a trail is returned unchanged",
          "[solvers][walk-to-trail]") {
    DigraphBuilder b(false);
    for (int i = 0; i < 3; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 2);
    ArcColoredDigraph d = arc_colored(b.build(), {0, 1});
    Certificate w = make_walk_certificate(ConstraintKind::pc_directed, {0, 1, 2}, {0, 1}, false);
    Certificate out = pc_walk_to_trail(d, w);
    CHECK(out.vertices == w.vertices);
    CHECK(out.edges == w.edges);
}

TEST_CASE("one repeated arc is excised in one cut", "[solvers][walk-to-trail]") {
    DigraphBuilder b(false);
    for (int i = 0; i < 3; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 2).add_arc(2, 2, 1);
    ArcColoredDigraph d = arc_colored(b.build(), {0, 1, 0});
    // 0 ->a0 1 ->a1 2 ->a2 1 ->a1 2 : arc 1 repeats; colors 0,1,0,1.
    Certificate w =
        make_walk_certificate(ConstraintKind::pc_directed, {0, 1, 2, 1, 2}, {0, 1, 2, 1}, false);
    validate_certificate(d, w);
    Certificate out = pc_walk_to_trail(d, w);
    CHECK(out.vertices == std::vector<VertexId>{0, 1, 2});
    CHECK(out.edges == std::vector<ArcId>{0, 1});
    validate_certificate(d, out);
}

TEST_CASE("walk-to-trail rejects malformed input", "[solvers][walk-to-trail]") {
    DigraphBuilder b(false);
    for (int i = 0; i < 3; ++i) b.add_vertex(i);
    b.add_arc(0, 0, 1).add_arc(1, 1, 2);
    ArcColoredDigraph d = arc_colored(b.build(), {0, 0});
    // Not properly colored: consecutive arcs share a color.
    Certificate bad =
        make_walk_certificate(ConstraintKind::pc_directed, {0, 1, 2}, {0, 1}, false);
    CHECK_THROWS_AS(pc_walk_to_trail(d, bad), InputError);
    // Wrong constraint family.
    Certificate wrong = make_walk_certificate(ConstraintKind::directed, {0, 1}, {0}, false);
    CHECK_THROWS_AS(pc_walk_to_trail(d, wrong), InputError);
}

TEST_CASE("random properly colored walks reduce to valid trails with the same ends",
          "[solvers][walk-to-trail][oracle]") {
    std::mt19937_64 rng(0x7A11);
    int reduced = 0, shortened = 0;
    for (int iter = 0; iter < 700; ++iter) {
        ArcColoredDigraph d = random_arc_colored(rng, 5, 35, 2);
        auto w = random_pc_walk(rng, d, 12);
        if (!w) continue;
        Certificate out = pc_walk_to_trail(d, *w);
        validate_certificate(d, out);
        CHECK(out.vertices.front() == w->vertices.front());
        CHECK(out.vertices.back() == w->vertices.back());
        std::set<ArcId> in(w->edges.begin(), w->edges.end());
        std::set<ArcId> uniq(out.edges.begin(), out.edges.end());
        CHECK(uniq.size() == out.edges.size());
        for (ArcId a : out.edges) CHECK(in.count(a) == 1);
        ++reduced;
        if (out.edges.size() < w->edges.size()) ++shortened;
    }
    CHECK(reduced > 400);
    CHECK(shortened > 50);
}

// ---------------------------------------------------------------------------
// Budgeted searches on hard directed problems
// ---------------------------------------------------------------------------

TEST_CASE("two-vertex matched digraph has no alternating circuit",
          "[solvers][hard-directed]") {
    DigraphBuilder b(false);
    b.add_vertex(0).add_vertex(1);
    b.add_arc(0, 0, 1).add_arc(1, 1, 0);
    MatchedDigraph md = matched_digraph(b.build(), {0, 1});
    SearchOutcome out = hard_directed_search(md, MatchedDigraphQuery::alternating_circuit);
    CHECK(out.status == SearchStatus::absent);
}

TEST_CASE("doubled image of a properly colored circuit has an alternating circuit",
          "[solvers][hard-directed]") {
    DigraphBuilder b(true);
    b.add_vertex(0).add_vertex(1);
    b.add_arc(0, 0, 1).add_arc(1, 1, 0);
    ArcColoredDigraph d = arc_colored(b.build(), {0, 1});
    auto art = arc_colored_to_matched_digraph(d);
    SearchOutcome out =
        hard_directed_search(art.instance, MatchedDigraphQuery::alternating_circuit);
    REQUIRE(out.status == SearchStatus::found);
    validate_certificate(art.instance, *out.certificate);
    REQUIRE(find_alternating_circuit_brute(art.instance).has_value());
}

TEST_CASE("acyclic arc-colored digraphs have no properly colored circuit image",
          "[solvers][hard-directed]") {
    std::mt19937_64 rng(0xACDC);
    for (int iter = 0; iter < 30; ++iter) {
        ArcColoredDigraph d = random_acyclic_arc_colored(rng, 5, 40);
        if (d.graph.arc_count() == 0) continue;
        auto art = arc_colored_to_matched_digraph(d);
        SearchOutcome out =
            hard_directed_search(art.instance, MatchedDigraphQuery::alternating_circuit);
        CHECK(out.status == SearchStatus::absent);
    }
}

TEST_CASE("invalid matchings are rejected before searching", "[solvers][hard-directed]") {
    DigraphBuilder b(false);
    b.add_vertex(0).add_vertex(1);
    b.add_arc(0, 0, 1).add_arc(1, 1, 0);
    MatchedDigraph bad{b.build(), {0}};  // reverse arc not matched
    CHECK_THROWS_AS(hard_directed_search(bad, MatchedDigraphQuery::alternating_circuit),
                    InputError);
}

TEST_CASE("matched digraph searches agree with brute force",
          "[solvers][hard-directed][oracle]") {
    std::mt19937_64 rng(0x3A7C4);
    int circuits = 0, paths = 0;
    for (int iter = 0; iter < 60; ++iter) {
        ArcColoredDigraph d = random_arc_colored(rng, 4, 35, 2);
        if (d.graph.arc_count() == 0) continue;
        auto art = arc_colored_to_matched_digraph(d);
        const MatchedDigraph& md = art.instance;

        SearchOutcome cyc = hard_directed_search(md, MatchedDigraphQuery::alternating_circuit);
        REQUIRE(cyc.status != SearchStatus::budget_exhausted);
        REQUIRE((cyc.status == SearchStatus::found) ==
                find_alternating_circuit_brute(md).has_value());
        if (cyc.certificate) {
            validate_certificate(md, *cyc.certificate);
            ++circuits;
        }

        for (VertexId s : md.graph.vertices())
            for (VertexId t : md.graph.vertices()) {
                if (s == t || (s + t) % 3 != 0) continue;  // sample pairs
                SearchOutcome out = hard_directed_search(
                    md, MatchedDigraphQuery::alternating_directed_path, s, t);
                REQUIRE(out.status != SearchStatus::budget_exhausted);
                REQUIRE((out.status == SearchStatus::found) ==
                        alt_dir_path_exists_brute(md, s, t));
                if (out.certificate) {
                    validate_certificate(md, *out.certificate);
                    CHECK(out.certificate->vertices.front() == s);
                    CHECK(out.certificate->vertices.back() == t);
                    ++paths;
                }
            }
    }
    CHECK(circuits > 10);
    CHECK(paths > 40);
}

TEST_CASE("vertex-simple properly colored directed path search matches brute force",
          "[solvers][hard-directed][oracle]") {
    std::mt19937_64 rng(0x5EA2C4);
    int found = 0, absent = 0;
    for (int iter = 0; iter < 100; ++iter) {
        ArcColoredDigraph d = random_arc_colored(rng, 5, 30, 2 + iter % 2);
        for (VertexId s : d.graph.vertices())
            for (VertexId t : d.graph.vertices()) {
                if (s == t) continue;
                SearchOutcome out = hard_directed_search(d, s, t);
                REQUIRE(out.status != SearchStatus::budget_exhausted);
                bool expect = pc_dir_path_exists_brute(d, s, t);
                REQUIRE((out.status == SearchStatus::found) == expect);
                if (out.certificate) {
                    validate_certificate(d, *out.certificate);
                    ++found;
                } else {
                    ++absent;
                }
            }
    }
    CHECK(found > 300);
    CHECK(absent > 300);
}

TEST_CASE("directed searches report exhaustion under tiny budgets",
          "[solvers][hard-directed]") {
    // Complete 2-colored digraph on six vertices plus an unreachable target.
    DigraphBuilder b(false);
    for (int i = 0; i < 7; ++i) b.add_vertex(i);
    ArcId a = 0;
    std::vector<ColorId> cs;
    for (int u = 0; u < 6; ++u)
        for (int v = 0; v < 6; ++v)
            if (u != v) {
                b.add_arc(a, u, v);
                cs.push_back(static_cast<ColorId>(a % 2));
                ++a;
            }
    ArcColoredDigraph d = arc_colored(b.build(), std::move(cs));
    SearchOutcome out = hard_directed_search(d, 0, 6, 4);
    CHECK(out.status == SearchStatus::budget_exhausted);
    SearchOutcome full = hard_directed_search(d, 0, 6);
    CHECK(full.status == SearchStatus::absent);

    // An acyclic image has no alternating circuit, so proving absence needs
    // the whole space — a tiny budget must give up instead.
    std::mt19937_64 rng(0xB4D6E7);
    ArcColoredDigraph dag = random_acyclic_arc_colored(rng, 6, 80);
    REQUIRE(dag.graph.arc_count() >= 8);
    auto art = arc_colored_to_matched_digraph(dag);
    SearchOutcome circ =
        hard_directed_search(art.instance, MatchedDigraphQuery::alternating_circuit,
                             std::nullopt, std::nullopt, 3);
    CHECK(circ.status == SearchStatus::budget_exhausted);
    SearchOutcome circ_full =
        hard_directed_search(art.instance, MatchedDigraphQuery::alternating_circuit);
    CHECK(circ_full.status == SearchStatus::absent);
}

TEST_CASE("matched digraph query endpoints are validated", "[solvers][hard-directed]") {
    DigraphBuilder b(false);
    b.add_vertex(0).add_vertex(1);
    b.add_arc(0, 0, 1).add_arc(1, 1, 0);
    MatchedDigraph md = matched_digraph(b.build(), {0, 1});
    CHECK_THROWS_AS(
        hard_directed_search(md, MatchedDigraphQuery::alternating_circuit, 0, 1), InputError);
    CHECK_THROWS_AS(
        hard_directed_search(md, MatchedDigraphQuery::alternating_directed_path), InputError);
    CHECK_THROWS_AS(
        hard_directed_search(md, MatchedDigraphQuery::alternating_directed_path, 0, 0),
        InputError);
    ArcColoredDigraph d = arc_colored(md.graph, {0, 1});
    CHECK_THROWS_AS(hard_directed_search(d, 0, 0), InputError);
    CHECK_THROWS_AS(hard_directed_search(d, 0, 9), InputError);
}

// ---------------------------------------------------------------------------
// Query plumbing
// ---------------------------------------------------------------------------

TEST_CASE("query invariants are enforced", "[solvers][query]") {
    Query q;
    q.kind = QueryKind::path;
    CHECK_THROWS_AS(validate_query(q), InputError);
    q.from = 0;
    q.to = 0;
    CHECK_THROWS_AS(validate_query(q), InputError);
    q.to = 1;
    CHECK_NOTHROW(validate_query(q));
    Query closed;
    closed.kind = QueryKind::cycle;
    CHECK_NOTHROW(validate_query(closed));
    closed.from = 0;
    CHECK_THROWS_AS(validate_query(closed), InputError);
    CHECK(to_string(QueryKind::closed_trail) == "closed-trail");
    CHECK(to_string(ConstraintFamily::forbidden_transitions) == "transitions");
    CHECK(to_string(ForbiddenPattern::two_disjoint_edges) == "two-disjoint-edges");
}
