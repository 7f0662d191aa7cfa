#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cdc/especial.hpp"
#include "cdc/generators.hpp"

using namespace cdc;

namespace {

std::vector<std::uint32_t> vertex_values(const Walk& w) {
    std::vector<std::uint32_t> out;
    for (VertexId v : w.vertex_sequence()) out.push_back(v.value);
    return out;
}

std::map<EdgeId, std::size_t> step_multiset(const Cover& c) {
    return c.edge_multiplicity();
}

std::map<EdgeId, std::size_t> walk_multiset(const Walk& w) {
    std::map<EdgeId, std::size_t> m;
    for (const auto& s : w.steps) ++m[s.edge];
    return m;
}

} // namespace

TEST_CASE("K5 especial constants match the fixed walks") {
    auto c = especial_constants(KuratowskiKind::K5);
    CHECK(vertex_values(c.especial.walk) == std::vector<std::uint32_t>{1, 2, 4, 5, 2, 3, 5, 1, 3, 4, 1});
    REQUIRE(c.especial.companions.size() == 2);
    CHECK(vertex_values(c.especial.companions[0]) == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 1});
    CHECK(vertex_values(c.especial.companions[1]) == std::vector<std::uint32_t>{1, 3, 5, 2, 4, 1});
    CHECK_FALSE(check_especial(c.graph, c.especial).has_value());
    // W covers each of the ten edges exactly once
    auto m = walk_multiset(c.especial.walk);
    CHECK(m.size() == 10);
    for (const auto& [e, k] : m) CHECK(k == 1);
}

TEST_CASE("K33 especial constants match the fixed walks") {
    auto c = especial_constants(KuratowskiKind::K33);
    CHECK(vertex_values(c.especial.walk) ==
          std::vector<std::uint32_t>{1, 2, 5, 4, 3, 6, 5, 4, 1, 2, 3, 6, 1});
    REQUIRE(c.especial.companions.size() == 1);
    CHECK(vertex_values(c.especial.companions[0]) == std::vector<std::uint32_t>{1, 4, 3, 2, 5, 6, 1});
    CHECK_FALSE(check_especial(c.graph, c.especial).has_value());
    // W covers three edges twice and six once; C covers exactly the six
    auto m = walk_multiset(c.especial.walk);
    std::size_t twice = 0, once = 0;
    for (const auto& [e, k] : m) (k == 2 ? twice : once)++;
    CHECK(twice == 3);
    CHECK(once == 6);
    for (const auto& s : c.especial.companions[0].steps) CHECK(m.at(s.edge) == 1);
}

TEST_CASE("especial condition (i) rejects opposite traversals") {
    auto c = especial_constants(KuratowskiKind::K5);
    EspecialWalk bad = c.especial;
    // append an out-and-back over one edge
    Walk w = bad.walk;
    VertexId last = w.end();
    auto inc = c.graph.incident_edges(last);
    EdgeId e = inc.front();
    VertexId other = c.graph.endpoints(e).other(last);
    w.append(e, other);
    w.append(e, last);
    bad.walk = w;
    CHECK(check_especial(c.graph, bad).has_value());
}

TEST_CASE("lift through a subdivision preserves the invariants") {
    auto c = especial_constants(KuratowskiKind::K5);
    // subdivide two edges of the canonical K5
    MultiGraph sub = c.graph;
    auto r1 = subdivide_edge(sub, EdgeId{0});
    sub = r1.graph;
    auto r2 = subdivide_edge(sub, EdgeId{7});
    sub = r2.graph;
    auto wit = recognize_kuratowski(sub);
    REQUIRE(wit.has_value());
    CHECK(wit->kind == KuratowskiKind::K5);
    EspecialWalk lifted = lift_to_subdivision(c, *wit);
    CHECK_FALSE(check_especial(sub, lifted).has_value());
    CHECK(lifted.walk.length() == c.especial.walk.length() + 2);
}

TEST_CASE("identity witness lifts to the identical walk") {
    auto c = especial_constants(KuratowskiKind::K33);
    auto wit = recognize_kuratowski(c.graph);
    REQUIRE(wit.has_value());
    EspecialWalk lifted = lift_to_subdivision(c, *wit);
    CHECK(walk_multiset(lifted.walk) == walk_multiset(c.especial.walk));
    CHECK(lifted.walk.length() == c.especial.walk.length());
}

TEST_CASE("figure eight peels into two triangles") {
    MultiGraph g = make_graph(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}});
    Walk w = walk_from_vertices(
        g, {VertexId{0}, VertexId{1}, VertexId{2}, VertexId{0}, VertexId{3}, VertexId{4}, VertexId{0}});
    Cover out = split_especial_walk(g, w, {});
    CHECK(out.size() == 2);
    for (const auto& el : out.elements) {
        CHECK(el.kind == ElementKind::Cycle);
        CHECK(el.walk.length() == 3);
        CHECK_FALSE(el.invalid_reason(g).has_value());
    }
    CHECK(step_multiset(out) == walk_multiset(w));
}

TEST_CASE("a simple cycle walk peels to itself") {
    MultiGraph c4 = generators::cycle(4);
    Walk w = walk_from_vertices(c4, {VertexId{0}, VertexId{1}, VertexId{2}, VertexId{3}, VertexId{0}});
    Cover out = split_especial_walk(c4, w, {});
    REQUIRE(out.size() == 1);
    CHECK(out.elements[0].walk.length() == 4);
}

TEST_CASE("splitting W of K5 at two anchors preserves multiplicities") {
    auto c = especial_constants(KuratowskiKind::K5);
    std::vector<FreeEdge> anchors{FreeEdge{EdgeId{100}, VertexId{1}, VertexId{50}},
                                  FreeEdge{EdgeId{101}, VertexId{3}, VertexId{51}}};
    Cover out = split_especial_walk(c.graph, c.especial.walk, anchors);
    // paths end in the two distinct free edges
    std::size_t paths = 0;
    for (const auto& el : out.elements) {
        if (el.kind == ElementKind::Path) {
            ++paths;
            auto [a, b] = el.terminal_edges();
            CHECK(a != b);
            CHECK((a == EdgeId{100} || a == EdgeId{101}));
            CHECK((b == EdgeId{100} || b == EdgeId{101}));
        }
    }
    CHECK(paths == 2);
    auto mult = step_multiset(out);
    auto wmult = walk_multiset(c.especial.walk);
    wmult[EdgeId{100}] = 2;
    wmult[EdgeId{101}] = 2;
    CHECK(mult == wmult);
}

TEST_CASE("anchors sharing one vertex produce a two-edge path") {
    MultiGraph c3 = generators::cycle(3);
    Walk w = walk_from_vertices(c3, {VertexId{0}, VertexId{1}, VertexId{2}, VertexId{0}});
    std::vector<FreeEdge> anchors{FreeEdge{EdgeId{100}, VertexId{1}, VertexId{50}},
                                  FreeEdge{EdgeId{101}, VertexId{1}, VertexId{51}}};
    Cover out = split_especial_walk(c3, w, anchors);
    bool saw_two_edge_path = false;
    for (const auto& el : out.elements)
        if (el.kind == ElementKind::Path && el.walk.length() == 2) saw_two_edge_path = true;
    CHECK(saw_two_edge_path);
    auto mult = step_multiset(out);
    CHECK(mult[EdgeId{100}] == 2);
    CHECK(mult[EdgeId{101}] == 2);
    for (const auto& [id, ep] : c3.edges()) CHECK(mult[id] == 1);
}

TEST_CASE("single anchor is rejected") {
    MultiGraph c3 = generators::cycle(3);
    Walk w = walk_from_vertices(c3, {VertexId{0}, VertexId{1}, VertexId{2}, VertexId{0}});
    CHECK_THROWS_AS(split_especial_walk(c3, w, {FreeEdge{EdgeId{9}, VertexId{0}, VertexId{8}}}),
                    std::invalid_argument);
}

TEST_CASE("anchor off the walk is rejected") {
    MultiGraph g = generators::cycle(4);
    g.add_vertex(VertexId{9});
    Walk w = walk_from_vertices(g, {VertexId{0}, VertexId{1}, VertexId{2}, VertexId{3}, VertexId{0}});
    std::vector<FreeEdge> anchors{FreeEdge{EdgeId{100}, VertexId{9}, VertexId{50}},
                                  FreeEdge{EdgeId{101}, VertexId{0}, VertexId{51}}};
    CHECK_THROWS_AS(split_especial_walk(g, w, anchors), std::invalid_argument);
}

TEST_CASE("peeling terminates and preserves steps on random closed walks") {
    std::mt19937 rng(2718);
    for (int it = 0; it < 200; ++it) {
        // random closed walk on K6 by random steps returning home via a path
        MultiGraph g = generators::complete(6);
        std::vector<VertexId> seq{VertexId{0}};
        std::uniform_int_distribution<std::uint32_t> pick(0, 5);
        for (int s = 0; s < 8; ++s) {
            VertexId next{pick(rng)};
            if (next == seq.back()) next = VertexId{(next.value + 1) % 6};
            seq.push_back(next);
        }
        if (seq.back() != VertexId{0}) seq.push_back(VertexId{0});
        Walk w = Walk{};
        w.start = seq.front();
        // choose edges directly (complete graph, unique edge per pair)
        std::map<std::pair<VertexId, VertexId>, EdgeId> lookup;
        for (const auto& [id, ep] : g.edges()) lookup[ep.key()] = id;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            VertexId a = seq[i], b = seq[i + 1];
            w.append(lookup.at(a <= b ? std::pair{a, b} : std::pair{b, a}), b);
        }
        auto cycles = peel_closed_walk(w);
        std::map<EdgeId, std::size_t> total;
        for (const auto& c : cycles) {
            CHECK(c.closed());
            CoverElement el{ElementKind::Cycle, c};
            // peeled pieces are genuine cycles except they may reuse an edge
            // id when the walk did; check closure and vertex-distinctness
            std::vector<VertexId> vs = c.vertex_sequence();
            std::set<VertexId> interior(vs.begin() + 1, vs.end() - 1);
            CHECK(interior.size() == vs.size() - 2);
            for (const auto& s : c.steps) ++total[s.edge];
        }
        CHECK(total == walk_multiset(w));
    }
}
