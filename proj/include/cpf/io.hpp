#pragma once

// One self-describing structured-text document format for all eight instance
// families. Labels are user-facing strings; internal ids are assigned
// deterministically by first appearance, so reading is reproducible and a
// canonical write (the only kind this module produces) round-trips through
// read byte-identically. Certificates travel as label sequences plus their
// walk-kind and constraint tags, so an external script can re-check them
// with nothing but the document.

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "cpf/certificate.hpp"
#include "cpf/colored.hpp"
#include "cpf/digraph.hpp"
#include "cpf/errors.hpp"
#include "cpf/graph.hpp"
#include "cpf/matching.hpp"

namespace cpf {

enum class InstanceKind {
    graph,
    edge_colored,
    transitions,
    locally2,
    matched,
    digraph,
    arc_colored_digraph,
    matched_digraph,
};

inline std::string to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::graph: return "graph";
        case InstanceKind::edge_colored: return "edge-colored";
        case InstanceKind::transitions: return "transitions";
        case InstanceKind::locally2: return "locally2";
        case InstanceKind::matched: return "matched";
        case InstanceKind::digraph: return "digraph";
        case InstanceKind::arc_colored_digraph: return "arc-colored-digraph";
        case InstanceKind::matched_digraph: return "matched-digraph";
    }
    return "?";
}

inline std::optional<InstanceKind> parse_instance_kind(const std::string& s) {
    for (InstanceKind k :
         {InstanceKind::graph, InstanceKind::edge_colored, InstanceKind::transitions,
          InstanceKind::locally2, InstanceKind::matched, InstanceKind::digraph,
          InstanceKind::arc_colored_digraph, InstanceKind::matched_digraph})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

inline std::optional<WalkKind> parse_walk_kind(const std::string& s) {
    for (WalkKind k : {WalkKind::walk, WalkKind::trail, WalkKind::path, WalkKind::cycle,
                       WalkKind::closed_trail})
        if (to_string(k) == s) return k;
    return std::nullopt;
}

inline std::optional<ConstraintKind> parse_constraint_kind(const std::string& s) {
    for (ConstraintKind c :
         {ConstraintKind::none, ConstraintKind::transitions, ConstraintKind::properly_colored,
          ConstraintKind::rainbow, ConstraintKind::locally_two_colored,
          ConstraintKind::alternating, ConstraintKind::directed, ConstraintKind::pc_directed,
          ConstraintKind::alternating_directed})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

// A graph paired with its transition system; the two travel together in
// documents and queries.
struct TransitionInstance {
    Graph graph;
    TransitionSystem system;
};

using InstancePayload =
    std::variant<Graph, EdgeColoredGraph, TransitionInstance, LocallyTwoColoredGraph,
                 MatchedGraph, Digraph, ArcColoredDigraph, MatchedDigraph>;

// A parsed or wrapped instance plus the label tables that give its vertices,
// edges (or arcs), and colors their user-facing names.
struct Document {
    InstancePayload payload;
    std::vector<std::string> vertex_labels;       // by vertex index
    std::vector<std::string> edge_labels;         // by edge / arc index
    std::map<ColorId, std::string> color_labels;  // by color value

    InstanceKind kind() const { return static_cast<InstanceKind>(payload.index()); }
};

namespace iodetail {

inline void bad(std::size_t line, const std::string& why) {
    throw InputError("line " + std::to_string(line) + ": " + why);
}

inline std::vector<std::string> tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

inline void check_label(std::size_t line, const std::string& lbl) {
    if (lbl.empty()) bad(line, "empty label");
    for (char c : lbl)
        if (c == ':' || c == '#' || static_cast<unsigned char>(c) <= ' ')
            bad(line, "label '" + lbl + "' contains whitespace or reserved characters");
}

// Label table with first-appearance id assignment.
struct Names {
    std::map<std::string, int> ids;
    std::vector<std::string> labels;

    int intern(std::size_t line, const std::string& lbl) {
        check_label(line, lbl);
        auto [it, fresh] = ids.insert({lbl, static_cast<int>(labels.size())});
        if (fresh) labels.push_back(lbl);
        return it->second;
    }
    int lookup(std::size_t line, const std::string& lbl, const char* what) const {
        auto it = ids.find(lbl);
        if (it == ids.end()) bad(line, std::string("unknown ") + what + " '" + lbl + "'");
        return it->second;
    }
};

inline Side parse_side(std::size_t line, const std::string& s) {
    if (s == "R") return Side::R;
    if (s == "B") return Side::B;
    bad(line, "side must be R or B, got '" + s + "'");
    return Side::R;  // unreachable
}

// Accessors that make the eight payloads uniform for writing.
inline const Graph* undirected_of(const InstancePayload& p) {
    switch (p.index()) {
        case 0: return &std::get<Graph>(p);
        case 1: return &std::get<EdgeColoredGraph>(p).graph;
        case 2: return &std::get<TransitionInstance>(p).graph;
        case 3: return &std::get<LocallyTwoColoredGraph>(p).graph;
        case 4: return &std::get<MatchedGraph>(p).graph;
        default: return nullptr;
    }
}

inline const Digraph* directed_of(const InstancePayload& p) {
    switch (p.index()) {
        case 5: return &std::get<Digraph>(p);
        case 6: return &std::get<ArcColoredDigraph>(p).graph;
        case 7: return &std::get<MatchedDigraph>(p).graph;
        default: return nullptr;
    }
}

}  // namespace iodetail

// ---------------------------------------------------------------------------
// Reading
// ---------------------------------------------------------------------------

inline Document read_instance_text(const std::string& text) {
    using iodetail::bad;
    using iodetail::Names;

    std::optional<InstanceKind> kind;
    Names verts, edges, colors;
    std::vector<std::tuple<VertexId, VertexId>> edge_ends;  // by edge id
    std::vector<ColorId> edge_colors;
    std::vector<std::pair<Side, Side>> edge_sides;
    std::vector<std::tuple<VertexId, EdgeId, EdgeId>> transitions;
    std::vector<EdgeId> matching;
    bool saw_vertices = false, saw_matching = false;

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
            raw.pop_back();
        if (raw.empty() || raw[0] == '#') continue;
        auto colon = raw.find(':');
        if (colon == std::string::npos) bad(lineno, "expected 'field: values'");
        std::string field = raw.substr(0, colon);
        std::vector<std::string> toks = iodetail::tokens(raw.substr(colon + 1));

        if (field == "kind") {
            if (kind) bad(lineno, "duplicate kind line");
            if (toks.size() != 1) bad(lineno, "kind takes exactly one value");
            kind = parse_instance_kind(toks[0]);
            if (!kind) bad(lineno, "unknown instance kind '" + toks[0] + "'");
            continue;
        }
        if (!kind) bad(lineno, "the first field must be kind");

        if (field == "vertices") {
            if (saw_vertices) bad(lineno, "duplicate vertices line");
            saw_vertices = true;
            for (const std::string& lbl : toks)
                if (static_cast<std::size_t>(verts.intern(lineno, lbl)) + 1 != verts.labels.size())
                    bad(lineno, "duplicate vertex label '" + lbl + "'");
            continue;
        }
        if (!saw_vertices) bad(lineno, "vertices must come before " + field + " lines");

        bool is_directed = *kind == InstanceKind::digraph ||
                           *kind == InstanceKind::arc_colored_digraph ||
                           *kind == InstanceKind::matched_digraph;
        if (field == "edge" || field == "arc") {
            if (is_directed != (field == "arc"))
                bad(lineno, std::string("this instance kind lists ") +
                                (is_directed ? "arcs" : "edges"));
            std::size_t want = 3;
            if (*kind == InstanceKind::edge_colored || *kind == InstanceKind::arc_colored_digraph)
                want = 4;
            if (*kind == InstanceKind::locally2) want = 5;
            if (toks.size() != want)
                bad(lineno, field + " takes " + std::to_string(want) + " values here");
            if (static_cast<std::size_t>(edges.intern(lineno, toks[0])) + 1 !=
                edges.labels.size())
                bad(lineno, "duplicate " + field + " label '" + toks[0] + "'");
            VertexId u = verts.lookup(lineno, toks[1], "vertex");
            VertexId v = verts.lookup(lineno, toks[2], "vertex");
            edge_ends.push_back({u, v});
            if (want == 4) edge_colors.push_back(colors.intern(lineno, toks[3]));
            if (want == 5)
                edge_sides.push_back({iodetail::parse_side(lineno, toks[3]),
                                      iodetail::parse_side(lineno, toks[4])});
            continue;
        }
        if (field == "transition") {
            if (*kind != InstanceKind::transitions)
                bad(lineno, "transition lines belong to kind transitions");
            if (toks.size() != 3) bad(lineno, "transition takes vertex edge edge");
            VertexId v = verts.lookup(lineno, toks[0], "vertex");
            EdgeId e = edges.lookup(lineno, toks[1], "edge");
            EdgeId f = edges.lookup(lineno, toks[2], "edge");
            transitions.push_back({v, e, f});
            continue;
        }
        if (field == "matching") {
            if (*kind != InstanceKind::matched && *kind != InstanceKind::matched_digraph)
                bad(lineno, "matching lines belong to the matched kinds");
            if (saw_matching) bad(lineno, "duplicate matching line");
            saw_matching = true;
            for (const std::string& lbl : toks)
                matching.push_back(edges.lookup(lineno, lbl, "edge"));
            continue;
        }
        bad(lineno, "unknown field '" + field + "'");
    }
    if (!kind) throw InputError("empty document: no kind line");
    if (!saw_vertices) throw InputError("document has no vertices line");
    if ((*kind == InstanceKind::matched || *kind == InstanceKind::matched_digraph) &&
        !saw_matching)
        throw InputError("matched kinds need a matching line");

    Document doc{Graph{}, std::move(verts.labels), std::move(edges.labels), {}};
    for (std::size_t i = 0; i < colors.labels.size(); ++i)
        doc.color_labels[static_cast<ColorId>(i)] = colors.labels[i];

    bool is_directed = *kind == InstanceKind::digraph ||
                       *kind == InstanceKind::arc_colored_digraph ||
                       *kind == InstanceKind::matched_digraph;
    if (is_directed) {
        DigraphBuilder b(true);
        for (std::size_t i = 0; i < doc.vertex_labels.size(); ++i)
            b.add_vertex(static_cast<VertexId>(i));
        for (std::size_t i = 0; i < edge_ends.size(); ++i)
            b.add_arc(static_cast<ArcId>(i), std::get<0>(edge_ends[i]),
                      std::get<1>(edge_ends[i]));
        Digraph d = b.build();
        switch (*kind) {
            case InstanceKind::digraph: doc.payload = std::move(d); break;
            case InstanceKind::arc_colored_digraph:
                doc.payload = arc_colored(std::move(d), std::move(edge_colors));
                break;
            default:
                doc.payload = matched_digraph(std::move(d), std::move(matching));
                break;
        }
        return doc;
    }

    GraphBuilder b(true);
    for (std::size_t i = 0; i < doc.vertex_labels.size(); ++i)
        b.add_vertex(static_cast<VertexId>(i));
    for (std::size_t i = 0; i < edge_ends.size(); ++i)
        b.add_edge(static_cast<EdgeId>(i), std::get<0>(edge_ends[i]), std::get<1>(edge_ends[i]));
    Graph g = b.build();
    switch (*kind) {
        case InstanceKind::graph: doc.payload = std::move(g); break;
        case InstanceKind::edge_colored:
            doc.payload = edge_colored(std::move(g), std::move(edge_colors));
            break;
        case InstanceKind::transitions: {
            TransitionSystem ts = transition_system(g, transitions);
            doc.payload = TransitionInstance{std::move(g), std::move(ts)};
            break;
        }
        case InstanceKind::locally2:
            doc.payload = locally_two_colored(std::move(g), std::move(edge_sides));
            break;
        default: {
            Matching m = make_matching(std::move(matching));
            validate_matching(g, m);
            doc.payload = MatchedGraph{std::move(g), std::move(m)};
            break;
        }
    }
    return doc;
}

inline Document read_instance(std::istream& in) {
    std::ostringstream all;
    all << in.rdbuf();
    return read_instance_text(all.str());
}

// ---------------------------------------------------------------------------
// Writing (canonical form)
// ---------------------------------------------------------------------------

inline void write_instance(std::ostream& out, const Document& doc) {
    using iodetail::directed_of;
    using iodetail::undirected_of;

    const Graph* g = undirected_of(doc.payload);
    const Digraph* d = directed_of(doc.payload);
    std::size_t vertex_count = g ? g->vertex_count() : d->vertex_count();
    std::size_t edge_count = g ? g->edge_count() : d->arc_count();
    if (doc.vertex_labels.size() != vertex_count)
        throw InputError("document has " + std::to_string(doc.vertex_labels.size()) +
                         " vertex labels for " + std::to_string(vertex_count) + " vertices");
    if (doc.edge_labels.size() != edge_count)
        throw InputError("document has " + std::to_string(doc.edge_labels.size()) +
                         " edge labels for " + std::to_string(edge_count) + " edges");
    auto color_label = [&](ColorId c) {
        auto it = doc.color_labels.find(c);
        if (it == doc.color_labels.end())
            throw InputError("no label for color " + std::to_string(c));
        return it->second;
    };

    out << "kind: " << to_string(doc.kind()) << "\n";
    out << "vertices:";
    for (const std::string& lbl : doc.vertex_labels) out << " " << lbl;
    out << "\n";

    const char* field = d ? "arc" : "edge";
    for (std::size_t i = 0; i < edge_count; ++i) {
        VertexId u, v;
        if (g) {
            auto [a, b] = g->endpoints(g->edge_at(i));
            u = a;
            v = b;
        } else {
            ArcId a = d->arc_at(i);
            u = d->tail(a);
            v = d->head(a);
        }
        out << field << ": " << doc.edge_labels[i] << " "
            << doc.vertex_labels[g ? g->vertex_index(u) : d->vertex_index(u)] << " "
            << doc.vertex_labels[g ? g->vertex_index(v) : d->vertex_index(v)];
        switch (doc.kind()) {
            case InstanceKind::edge_colored:
                out << " " << color_label(std::get<EdgeColoredGraph>(doc.payload).colors[i]);
                break;
            case InstanceKind::arc_colored_digraph:
                out << " " << color_label(std::get<ArcColoredDigraph>(doc.payload).colors[i]);
                break;
            case InstanceKind::locally2: {
                auto [su, sv] = std::get<LocallyTwoColoredGraph>(doc.payload).sides[i];
                out << " " << to_char(su) << " " << to_char(sv);
                break;
            }
            default: break;
        }
        out << "\n";
    }

    if (doc.kind() == InstanceKind::transitions) {
        const auto& [tg, ts] = std::get<TransitionInstance>(doc.payload);
        for (VertexId v : tg.vertices()) {
            const Graph& local = ts.at(tg, v);
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            for (EdgeId pe : local.edges()) {
                auto [e, f] = local.endpoints(pe);
                std::size_t ei = tg.edge_index(e), fi = tg.edge_index(f);
                pairs.push_back(std::minmax(ei, fi));
            }
            std::sort(pairs.begin(), pairs.end());
            for (auto [ei, fi] : pairs)
                out << "transition: " << doc.vertex_labels[tg.vertex_index(v)] << " "
                    << doc.edge_labels[ei] << " " << doc.edge_labels[fi] << "\n";
        }
    }
    if (doc.kind() == InstanceKind::matched) {
        const auto& mg = std::get<MatchedGraph>(doc.payload);
        out << "matching:";
        for (EdgeId e : mg.matching.edges) out << " " << doc.edge_labels[mg.graph.edge_index(e)];
        out << "\n";
    }
    if (doc.kind() == InstanceKind::matched_digraph) {
        const auto& md = std::get<MatchedDigraph>(doc.payload);
        out << "matching:";
        for (ArcId a : md.matching) out << " " << doc.edge_labels[md.graph.arc_index(a)];
        out << "\n";
    }
}

inline std::string write_instance_text(const Document& doc) {
    std::ostringstream out;
    write_instance(out, doc);
    return out.str();
}

// ---------------------------------------------------------------------------
// Wrapping raw instances (synthesized labels)
// ---------------------------------------------------------------------------

namespace iodetail {

inline std::vector<std::string> synth(const char* prefix, const std::vector<int>& ids) {
    std::vector<std::string> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(prefix + std::to_string(id));
    return out;
}

inline Document wrap_undirected(InstancePayload payload) {
    const Graph& g = *undirected_of(payload);
    Document doc{std::move(payload), synth("v", g.vertices()), synth("e", g.edges()), {}};
    return doc;
}

inline Document wrap_directed(InstancePayload payload) {
    const Digraph& d = *directed_of(payload);
    Document doc{std::move(payload), synth("v", d.vertices()), synth("a", d.arcs()), {}};
    return doc;
}

inline void synth_colors(Document& doc, const std::vector<ColorId>& colors) {
    for (ColorId c : colors) doc.color_labels.insert({c, "c" + std::to_string(c)});
}

}  // namespace iodetail

inline Document document(Graph g) { return iodetail::wrap_undirected(std::move(g)); }

inline Document document(EdgeColoredGraph g) {
    std::vector<ColorId> cs = g.colors;
    Document doc = iodetail::wrap_undirected(std::move(g));
    iodetail::synth_colors(doc, cs);
    return doc;
}

inline Document document(Graph g, TransitionSystem ts) {
    return iodetail::wrap_undirected(TransitionInstance{std::move(g), std::move(ts)});
}

inline Document document(LocallyTwoColoredGraph l) {
    return iodetail::wrap_undirected(std::move(l));
}

inline Document document(MatchedGraph mg) { return iodetail::wrap_undirected(std::move(mg)); }

inline Document document(Graph g, Matching m) {
    return document(MatchedGraph{std::move(g), std::move(m)});
}

inline Document document(Digraph d) { return iodetail::wrap_directed(std::move(d)); }

inline Document document(ArcColoredDigraph d) {
    std::vector<ColorId> cs = d.colors;
    Document doc = iodetail::wrap_directed(std::move(d));
    iodetail::synth_colors(doc, cs);
    return doc;
}

inline Document document(MatchedDigraph md) { return iodetail::wrap_directed(std::move(md)); }

// ---------------------------------------------------------------------------
// Certificates as label sequences
// ---------------------------------------------------------------------------

inline std::string write_certificate_text(const Document& doc, const Certificate& c) {
    const Graph* g = iodetail::undirected_of(doc.payload);
    const Digraph* d = iodetail::directed_of(doc.payload);
    std::ostringstream out;
    out << "certificate: " << to_string(c.constraint) << " " << to_string(c.kind) << "\n";
    out << "walk:";
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        VertexId v = c.vertices[i];
        std::size_t vi = g ? g->vertex_index(v) : d->vertex_index(v);
        out << " " << doc.vertex_labels[vi];
        if (i < c.edges.size()) {
            EdgeId e = c.edges[i];
            std::size_t ei = g ? g->edge_index(e) : d->arc_index(e);
            out << " " << doc.edge_labels[ei];
        }
    }
    out << "\n";
    return out.str();
}

inline Certificate read_certificate_text(const Document& doc, const std::string& text) {
    using iodetail::bad;
    std::optional<WalkKind> kind;
    std::optional<ConstraintKind> constraint;
    std::vector<VertexId> vs;
    std::vector<EdgeId> es;
    bool saw_walk = false;

    std::map<std::string, int> vert_ids, edge_ids;
    for (std::size_t i = 0; i < doc.vertex_labels.size(); ++i)
        vert_ids[doc.vertex_labels[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < doc.edge_labels.size(); ++i)
        edge_ids[doc.edge_labels[i]] = static_cast<int>(i);
    const Graph* g = iodetail::undirected_of(doc.payload);
    const Digraph* d = iodetail::directed_of(doc.payload);
    auto vertex_id = [&](std::size_t line, const std::string& lbl) -> VertexId {
        auto it = vert_ids.find(lbl);
        if (it == vert_ids.end()) bad(line, "unknown vertex '" + lbl + "'");
        return g ? g->vertex_at(it->second) : d->vertex_at(it->second);
    };
    auto edge_id = [&](std::size_t line, const std::string& lbl) -> EdgeId {
        auto it = edge_ids.find(lbl);
        if (it == edge_ids.end()) bad(line, "unknown edge '" + lbl + "'");
        return g ? g->edge_at(it->second) : d->arc_at(it->second);
    };

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' || raw.back() == '\t'))
            raw.pop_back();
        if (raw.empty() || raw[0] == '#') continue;
        auto colon = raw.find(':');
        if (colon == std::string::npos) bad(lineno, "expected 'field: values'");
        std::string field = raw.substr(0, colon);
        std::vector<std::string> toks = iodetail::tokens(raw.substr(colon + 1));
        if (field == "certificate") {
            if (kind) bad(lineno, "duplicate certificate line");
            if (toks.size() != 2) bad(lineno, "certificate takes constraint and walk kind");
            constraint = parse_constraint_kind(toks[0]);
            if (!constraint) bad(lineno, "unknown constraint '" + toks[0] + "'");
            kind = parse_walk_kind(toks[1]);
            if (!kind) bad(lineno, "unknown walk kind '" + toks[1] + "'");
            continue;
        }
        if (field == "walk") {
            if (!kind) bad(lineno, "the certificate line must come first");
            if (saw_walk) bad(lineno, "duplicate walk line");
            saw_walk = true;
            if (toks.size() % 2 != 1) bad(lineno, "walk must interleave vertices and edges");
            for (std::size_t i = 0; i < toks.size(); ++i) {
                if (i % 2 == 0)
                    vs.push_back(vertex_id(lineno, toks[i]));
                else
                    es.push_back(edge_id(lineno, toks[i]));
            }
            continue;
        }
        bad(lineno, "unknown field '" + field + "'");
    }
    if (!kind || !saw_walk) throw InputError("certificate document needs certificate and walk lines");
    Certificate c;
    c.kind = *kind;
    c.constraint = *constraint;
    c.vertices = std::move(vs);
    c.edges = std::move(es);
    return c;
}

}  // namespace cpf
