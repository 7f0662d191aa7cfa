#pragma once

#include <array>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "cdc/decompose.hpp"
#include "cdc/free_edge_set.hpp"
#include "cdc/multigraph.hpp"

namespace cdc::generators {

inline MultiGraph cycle(std::uint32_t n) {
    MultiGraph g;
    for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(VertexId{i});
    for (std::uint32_t i = 0; i < n; ++i) g.add_edge(VertexId{i}, VertexId{(i + 1) % n});
    return g;
}

inline MultiGraph complete(std::uint32_t n) {
    MultiGraph g;
    for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(VertexId{i});
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j) g.add_edge(VertexId{i}, VertexId{j});
    return g;
}

inline MultiGraph complete_bipartite(std::uint32_t a, std::uint32_t b) {
    MultiGraph g;
    for (std::uint32_t i = 0; i < a + b; ++i) g.add_vertex(VertexId{i});
    for (std::uint32_t i = 0; i < a; ++i)
        for (std::uint32_t j = 0; j < b; ++j) g.add_edge(VertexId{i}, VertexId{a + j});
    return g;
}

/// Wheel W_n: an n-cycle 0..n-1 plus a hub (vertex n) joined to every rim
/// vertex.
inline MultiGraph wheel(std::uint32_t n) {
    MultiGraph g = cycle(n);
    VertexId hub = g.add_vertex();
    for (std::uint32_t i = 0; i < n; ++i) g.add_edge(VertexId{i}, hub);
    return g;
}

/// The 3-cube: vertices are 3-bit strings, edges flip one bit.
inline MultiGraph cube_q3() {
    MultiGraph g;
    for (std::uint32_t i = 0; i < 8; ++i) g.add_vertex(VertexId{i});
    for (std::uint32_t i = 0; i < 8; ++i)
        for (std::uint32_t bit : {1u, 2u, 4u})
            if (i < (i ^ bit)) g.add_edge(VertexId{i}, VertexId{i ^ bit});
    return g;
}

/// Generalized Petersen graph GP(n, k): outer n-cycle 0..n-1, inner
/// vertices n..2n-1 with v_i ~ v_{i+k}, spokes u_i ~ v_i.
inline MultiGraph generalized_petersen(std::uint32_t n, std::uint32_t k) {
    MultiGraph g;
    for (std::uint32_t i = 0; i < 2 * n; ++i) g.add_vertex(VertexId{i});
    for (std::uint32_t i = 0; i < n; ++i) g.add_edge(VertexId{i}, VertexId{(i + 1) % n});
    for (std::uint32_t i = 0; i < n; ++i) g.add_edge(VertexId{n + i}, VertexId{n + (i + k) % n});
    for (std::uint32_t i = 0; i < n; ++i) g.add_edge(VertexId{i}, VertexId{n + i});
    return g;
}

inline MultiGraph petersen() { return generalized_petersen(5, 2); }

/// The dodecahedral graph is GP(10, 2).
inline MultiGraph dodecahedron() { return generalized_petersen(10, 2); }

/// Flower snark J_n (n odd >= 5): n stars A_i-{B_i,C_i,D_i}, the B's in an
/// n-cycle, the C's and D's in one 2n-cycle C_0..C_{n-1} D_0..D_{n-1}.
inline MultiGraph flower_snark(std::uint32_t n) {
    if (n < 5 || n % 2 == 0) throw std::invalid_argument("flower_snark: n must be odd and >= 5");
    MultiGraph g;
    auto A = [&](std::uint32_t i) { return VertexId{i}; };
    auto B = [&](std::uint32_t i) { return VertexId{n + i}; };
    auto C = [&](std::uint32_t i) { return VertexId{2 * n + i}; };
    auto D = [&](std::uint32_t i) { return VertexId{3 * n + i}; };
    for (std::uint32_t i = 0; i < 4 * n; ++i) g.add_vertex(VertexId{i});
    for (std::uint32_t i = 0; i < n; ++i) {
        g.add_edge(A(i), B(i));
        g.add_edge(A(i), C(i));
        g.add_edge(A(i), D(i));
    }
    for (std::uint32_t i = 0; i < n; ++i) g.add_edge(B(i), B((i + 1) % n));
    for (std::uint32_t i = 0; i + 1 < n; ++i) g.add_edge(C(i), C(i + 1));
    g.add_edge(C(n - 1), D(0));
    for (std::uint32_t i = 0; i + 1 < n; ++i) g.add_edge(D(i), D(i + 1));
    g.add_edge(D(n - 1), C(0));
    return g;
}

/// Isaacs dot product of two cubic graphs: remove two independent edges
/// a1b1, a2b2 from g, remove two adjacent vertices x ~ y from h, and join
/// the loose ends: a1-x1, b1-x2, a2-y1, b2-y2 where x1,x2 (resp. y1,y2)
/// are x's (y's) other neighbours. Applied to two Petersen graphs this
/// yields the Blanusa snarks.
inline MultiGraph dot_product(const MultiGraph& g, EdgeId ge1, EdgeId ge2, const MultiGraph& h,
                              VertexId hx, VertexId hy) {
    Endpoints e1 = g.endpoints(ge1), e2 = g.endpoints(ge2);
    if (e1.touches(e2.u) || e1.touches(e2.v))
        throw std::invalid_argument("dot_product: removed edges must be independent");
    MultiGraph out;
    std::map<VertexId, VertexId> gmap, hmap;
    for (VertexId v : g.vertices()) gmap[v] = out.add_vertex();
    for (VertexId v : h.vertices())
        if (v != hx && v != hy) hmap[v] = out.add_vertex();
    for (const auto& [id, ep] : g.edges())
        if (id != ge1 && id != ge2) out.add_edge(gmap.at(ep.u), gmap.at(ep.v));
    for (const auto& [id, ep] : h.edges())
        if (!ep.touches(hx) && !ep.touches(hy)) out.add_edge(hmap.at(ep.u), hmap.at(ep.v));
    std::vector<VertexId> xn, yn;
    for (const auto& [id, ep] : h.edges()) {
        if (ep.touches(hx) && ep.other(hx) != hy) xn.push_back(ep.other(hx));
        if (ep.touches(hy) && ep.other(hy) != hx) yn.push_back(ep.other(hy));
    }
    if (xn.size() != 2 || yn.size() != 2) throw std::invalid_argument("dot_product: x,y must be adjacent cubic vertices");
    out.add_edge(gmap.at(e1.u), hmap.at(xn[0]));
    out.add_edge(gmap.at(e1.v), hmap.at(xn[1]));
    out.add_edge(gmap.at(e2.u), hmap.at(yn[0]));
    out.add_edge(gmap.at(e2.v), hmap.at(yn[1]));
    return out;
}

/// The two Blanusa snarks (the only snarks on 18 vertices), built as dot
/// products of two Petersen graphs; the variants differ in the distance
/// between the two removed edges.
inline MultiGraph blanusa(int variant) {
    MultiGraph p = petersen();
    // Petersen edge ids: 0..4 outer cycle (i,i+1), 5..9 inner (5+i, 5+(i+2)%5),
    // 10..14 spokes (i, 5+i).
    if (variant == 1)
        return dot_product(p, EdgeId{0}, EdgeId{2}, petersen(), VertexId{0}, VertexId{1});
    if (variant == 2)
        return dot_product(p, EdgeId{0}, EdgeId{7}, petersen(), VertexId{0}, VertexId{1});
    throw std::invalid_argument("blanusa: variant must be 1 or 2");
}

/// Uniform random multigraph: up to max_v vertices and max_e edges, loops
/// and parallels permitted.
inline MultiGraph random_multigraph(std::mt19937& rng, std::uint32_t max_v, std::uint32_t max_e) {
    std::uniform_int_distribution<std::uint32_t> nv(1, max_v);
    std::uint32_t n = nv(rng);
    std::uniform_int_distribution<std::uint32_t> ne(0, max_e);
    std::uint32_t m = ne(rng);
    MultiGraph g;
    for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(VertexId{i});
    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    for (std::uint32_t i = 0; i < m; ++i) g.add_edge(VertexId{pick(rng)}, VertexId{pick(rng)});
    return g;
}

/// Random free edge set with up to max_count members and fresh outer ids.
inline FreeEdgeSet random_free_edges(std::mt19937& rng, const MultiGraph& g, std::uint32_t max_count) {
    std::uniform_int_distribution<std::uint32_t> nc(0, max_count);
    std::uint32_t count = nc(rng);
    std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
    if (verts.empty()) return {};
    std::uniform_int_distribution<std::size_t> pick(0, verts.size() - 1);
    FreeEdgeSet f;
    std::uint32_t v0 = g.next_vertex_counter(), e0 = g.next_edge_counter();
    for (std::uint32_t i = 0; i < count; ++i)
        f.add(FreeEdge{EdgeId{e0 + i}, verts[pick(rng)], VertexId{v0 + i}});
    return f;
}

/// Random maximal planar graph (an Apollonian network): repeatedly place a
/// new vertex inside a random triangular face. Then deletes each edge with
/// probability `thin` when the deletion keeps the graph bridgeless. The
/// result is planar, simple and bridgeless.
inline MultiGraph random_planar_bridgeless(std::mt19937& rng, std::uint32_t max_extra, double thin) {
    MultiGraph g = make_graph(3, {{0, 1}, {1, 2}, {2, 0}});
    std::vector<std::array<VertexId, 3>> faces{{VertexId{0}, VertexId{1}, VertexId{2}},
                                               {VertexId{0}, VertexId{1}, VertexId{2}}};
    std::uniform_int_distribution<std::uint32_t> extra_dist(0, max_extra);
    std::uint32_t extra = extra_dist(rng);
    for (std::uint32_t i = 0; i < extra; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, faces.size() - 1);
        std::size_t fi = pick(rng);
        auto tri = faces[fi];
        VertexId w = g.add_vertex();
        for (VertexId c : tri) g.add_edge(w, c);
        faces.erase(faces.begin() + static_cast<std::ptrdiff_t>(fi));
        faces.push_back({tri[0], tri[1], w});
        faces.push_back({tri[1], tri[2], w});
        faces.push_back({tri[0], tri[2], w});
    }
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<EdgeId> ids;
    for (const auto& [id, ep] : g.edges()) ids.push_back(id);
    for (EdgeId id : ids) {
        if (coin(rng) >= thin) continue;
        MultiGraph candidate = g;
        candidate.remove_edge(id);
        if (bridges(candidate).empty()) g = std::move(candidate);
    }
    return g;
}

} // namespace cdc::generators
