#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cdc/generators.hpp"
#include "cdc/kuratowski_cover.hpp"

using namespace cdc;

namespace {

/// Random subdivision of the canonical K5 or K3,3 with extra subdivision
/// vertices, plus a free edge set of the requested size.
struct MajorCase {
    MultiGraph graph;
    FreeEdgeSet free_edges;
};

MajorCase random_major(std::mt19937& rng, KuratowskiKind kind, std::size_t extra,
                       std::size_t free_count) {
    MultiGraph g = especial_constants(kind).graph;
    for (std::size_t i = 0; i < extra; ++i) {
        std::vector<EdgeId> ids;
        for (const auto& [id, ep] : g.edges()) ids.push_back(id);
        std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
        g = subdivide_edge(g, ids[pick(rng)]).graph;
    }
    FreeEdgeSet f;
    std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
    std::uniform_int_distribution<std::size_t> pv(0, verts.size() - 1);
    std::uint32_t v0 = g.next_vertex_counter(), e0 = g.next_edge_counter();
    for (std::size_t i = 0; i < free_count; ++i)
        f.add(FreeEdge{EdgeId{e0 + static_cast<std::uint32_t>(i)}, verts[pv(rng)],
                       VertexId{v0 + static_cast<std::uint32_t>(i)}});
    return {std::move(g), std::move(f)};
}

} // namespace

TEST_CASE("attachment sets of subgraphs of K4") {
    MultiGraph k4 = generators::complete(4);
    MultiGraph tri = induced_by_vertices(k4, {VertexId{0}, VertexId{1}, VertexId{2}});
    auto a = attachment_sets(k4, tri);
    CHECK(a.e2.empty());
    CHECK(a.e1.size() == 3);

    // the 4-cycle 0-1-3-2: edges 01 (0), 13 (4), 23 (5), 02 (1); chords 03 (2), 12 (3)
    MultiGraph c4 = induced_by_edges(k4, {EdgeId{0}, EdgeId{4}, EdgeId{5}, EdgeId{1}});
    auto b = attachment_sets(k4, c4);
    CHECK(b.e2 == std::set<EdgeId>{EdgeId{2}, EdgeId{3}});
    CHECK(b.e1.empty());

    auto c = attachment_sets(k4, k4);
    CHECK(c.e1.empty());
    CHECK(c.e2.empty());
}

TEST_CASE("ncdc of K5 with no free edges is a CDC") {
    MultiGraph k5 = generators::complete(5);
    Cover cover = ncdc_kuratowski_major(k5, {});
    CHECK(verify_cdc(k5, cover).ok);
    // split W yields three cycles; plus the two companions
    CHECK(cover.size() == 5);
}

TEST_CASE("ncdc of a K33 subdivision with two free edges") {
    std::mt19937 rng(11);
    MajorCase mc = random_major(rng, KuratowskiKind::K33, 3, 2);
    Cover cover = ncdc_kuratowski_major(mc.graph, mc.free_edges);
    CHECK(verify_ncdc(mc.graph, mc.free_edges, cover).ok);
}

TEST_CASE("ncdc_kuratowski_major rejects |F| = 1 and non-majors") {
    MultiGraph k5 = generators::complete(5);
    FreeEdgeSet one;
    one.add(FreeEdge{EdgeId{50}, VertexId{0}, VertexId{60}});
    CHECK_THROWS_AS(ncdc_kuratowski_major(k5, one), std::invalid_argument);
    CHECK_THROWS_AS(ncdc_kuratowski_major(generators::cycle(5), {}), std::invalid_argument);
}

TEST_CASE("ncdc of majors verifies across random subdivisions and free sets") {
    std::mt19937 rng(2024);
    for (KuratowskiKind kind : {KuratowskiKind::K5, KuratowskiKind::K33}) {
        for (std::size_t free_count : {0u, 2u, 3u, 4u}) {
            for (int rep = 0; rep < 6; ++rep) {
                std::uniform_int_distribution<std::size_t> extra(0, 20);
                MajorCase mc = random_major(rng, kind, extra(rng), free_count);
                Cover cover = ncdc_kuratowski_major(mc.graph, mc.free_edges);
                auto repo = verify_ncdc(mc.graph, mc.free_edges, cover);
                INFO(to_string(kind) << " extra-subdivisions free=" << free_count);
                CHECK(repo.ok);
            }
        }
    }
}

TEST_CASE("ncdc_major_with_chords without chords equals the plain major cover") {
    MultiGraph k5 = generators::complete(5);
    Cover plain = ncdc_kuratowski_major(k5, {});
    Cover chorded = ncdc_major_with_chords(k5, {}, {});
    CHECK(plain.canonical().elements == chorded.canonical().elements);
}

TEST_CASE("ncdc_major_with_chords handles a chorded K33 subdivision") {
    // subdivide one K33 edge twice so a chord between the two new vertices
    // is not parallel to anything
    MultiGraph g = especial_constants(KuratowskiKind::K33).graph;
    auto r1 = subdivide_edge(g, EdgeId{0});
    g = r1.graph;
    auto r2 = subdivide_edge(g, r1.record.half2);
    g = r2.graph;
    VertexId m1 = r1.mid, m2 = r2.mid;
    EdgeId chord = g.add_edge(m1, m2); // parallel to the half joining them? no: half m1-m2 exists
    // m1 and m2 are joined by r2.record.half1 (m1 side); adding the chord
    // creates a parallel pair, which a chord must not be. Use two distinct
    // host vertices instead.
    g.remove_edge(chord);
    chord = g.add_edge(VertexId{1}, m2);
    std::set<EdgeId> chords{chord};
    FreeEdgeSet f;
    f.add(FreeEdge{EdgeId{200}, VertexId{2}, VertexId{210}});
    f.add(FreeEdge{EdgeId{201}, m1, VertexId{211}});
    Cover cover = ncdc_major_with_chords(g, chords, f);
    CHECK(verify_ncdc(g, f, cover).ok);
}

TEST_CASE("ncdc_major_with_chords rejects |F| = 1 with no chords") {
    MultiGraph k5 = generators::complete(5);
    FreeEdgeSet one;
    one.add(FreeEdge{EdgeId{50}, VertexId{0}, VertexId{60}});
    CHECK_THROWS_AS(ncdc_major_with_chords(k5, {}, one), std::invalid_argument);
}

TEST_CASE("split W of K5 plus companions is the deterministic CDC") {
    // frozen expected decomposition of the fixed K5 walk: peeling yields
    // the cycles (2 4 5), (1 2 3 5), (1 3 4); companions are the two
    // hamiltonian cycles
    MultiGraph k5 = especial_constants(KuratowskiKind::K5).graph;
    Cover cover = ncdc_kuratowski_major(k5, {});
    std::set<std::vector<std::uint32_t>> got;
    for (const auto& el : cover.elements) {
        std::vector<std::uint32_t> vs;
        for (VertexId v : canonicalize(el).walk.vertex_sequence()) vs.push_back(v.value);
        got.insert(vs);
    }
    // canonical forms start from the minimal edge-id rotation; compare as
    // vertex sets of each element instead for robustness
    std::multiset<std::set<std::uint32_t>> vertex_sets;
    for (const auto& el : cover.elements) {
        std::set<std::uint32_t> s;
        for (VertexId v : el.walk.vertex_sequence()) s.insert(v.value);
        vertex_sets.insert(s);
    }
    std::multiset<std::set<std::uint32_t>> want{
        {2, 4, 5}, {1, 2, 3, 5}, {1, 3, 4}, {1, 2, 3, 4, 5}, {1, 2, 3, 4, 5}};
    CHECK(vertex_sets == want);
}
