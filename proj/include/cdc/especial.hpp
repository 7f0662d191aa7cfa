#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdc/cover.hpp"
#include "cdc/free_edge_set.hpp"
#include "cdc/multigraph.hpp"
#include "cdc/walk.hpp"
#include "cdc/witness.hpp"

namespace cdc {

/// A closed walk that traverses every host edge once or twice, never the
/// same edge in both directions, together with companion cycles so that
/// walk + companions double-cover the host.
struct EspecialWalk {
    Walk walk;
    std::vector<Walk> companions;

    /// Per-edge traversal directions of the closed walk.
    std::map<EdgeId, std::vector<std::pair<VertexId, VertexId>>> directions() const {
        std::map<EdgeId, std::vector<std::pair<VertexId, VertexId>>> out;
        VertexId at = walk.start;
        for (const auto& s : walk.steps) {
            out[s.edge].emplace_back(at, s.to);
            at = s.to;
        }
        return out;
    }
};

/// Checks the especial-walk conditions against a host: (i) no edge is
/// traversed in both directions by the walk, (ii) every host edge is
/// traversed once or twice, and walk + companions cover each edge exactly
/// twice. Returns the first failure.
inline std::optional<std::string> check_especial(const MultiGraph& host, const EspecialWalk& ew) {
    if (!ew.walk.closed()) return "walk is not closed";
    if (!ew.walk.consistent_with(host)) return "walk not consistent with host";
    auto dirs = ew.directions();
    for (const auto& [e, ds] : dirs) {
        if (ds.size() > 2) return "edge traversed more than twice";
        if (ds.size() == 2 && ds[0] != ds[1]) return "edge traversed in both directions";
    }
    std::map<EdgeId, std::size_t> mult;
    for (const auto& [e, ds] : dirs) mult[e] = ds.size();
    for (const auto& [id, ep] : host.edges()) {
        auto it = mult.find(id);
        if (it == mult.end()) return "host edge not traversed by walk";
    }
    for (const auto& c : ew.companions) {
        CoverElement el{ElementKind::Cycle, c};
        if (auto why = el.invalid_reason(host)) return "companion: " + *why;
        for (const auto& s : c.steps) ++mult[s.edge];
    }
    for (const auto& [id, ep] : host.edges())
        if (mult[id] != 2) return "walk plus companions do not double-cover an edge";
    return std::nullopt;
}

/// The fixed especial walk and companion cycles for an abstract Kuratowski
/// graph, on canonical vertex ids.
struct KuratowskiConstants {
    KuratowskiKind kind = KuratowskiKind::K5;
    MultiGraph graph;
    std::vector<VertexId> branch; // index convention matches KuratowskiWitness
    EspecialWalk especial;
};

namespace detail {

/// Walk through a simple graph along a vertex itinerary; edges may repeat.
inline Walk simple_walk(const MultiGraph& g, const std::vector<std::uint32_t>& verts) {
    std::map<std::pair<VertexId, VertexId>, EdgeId> lookup;
    for (const auto& [id, ep] : g.edges()) lookup[ep.key()] = id;
    Walk w;
    w.start = VertexId{verts.front()};
    for (std::size_t i = 0; i + 1 < verts.size(); ++i) {
        VertexId a{verts[i]}, b{verts[i + 1]};
        auto it = lookup.find(a <= b ? std::pair{a, b} : std::pair{b, a});
        if (it == lookup.end()) throw std::logic_error("simple_walk: missing edge");
        w.append(it->second, b);
    }
    return w;
}

} // namespace detail

/// Fixed constants on the abstract K5 (vertices 1..5) or K3,3 (vertices
/// 1..6 with odd/even bipartition):
///   K5:  W = v1 v2 v4 v5 v2 v3 v5 v1 v3 v4 v1, C = v1 v2 v3 v4 v5 v1,
///        D = v1 v3 v5 v2 v4 v1
///   K33: W = u1 u2 u5 u4 u3 u6 u5 u4 u1 u2 u3 u6 u1, C = u1 u4 u3 u2 u5 u6 u1
inline KuratowskiConstants especial_constants(KuratowskiKind kind) {
    KuratowskiConstants out;
    out.kind = kind;
    if (kind == KuratowskiKind::K5) {
        for (std::uint32_t i = 1; i <= 5; ++i) out.graph.add_vertex(VertexId{i});
        for (std::uint32_t i = 1; i <= 5; ++i)
            for (std::uint32_t j = i + 1; j <= 5; ++j) out.graph.add_edge(VertexId{i}, VertexId{j});
        out.branch = {VertexId{1}, VertexId{2}, VertexId{3}, VertexId{4}, VertexId{5}};
        out.especial.walk = detail::simple_walk(out.graph, {1, 2, 4, 5, 2, 3, 5, 1, 3, 4, 1});
        out.especial.companions = {detail::simple_walk(out.graph, {1, 2, 3, 4, 5, 1}),
                                   detail::simple_walk(out.graph, {1, 3, 5, 2, 4, 1})};
    } else {
        for (std::uint32_t i = 1; i <= 6; ++i) out.graph.add_vertex(VertexId{i});
        for (std::uint32_t i : {1u, 3u, 5u})
            for (std::uint32_t j : {2u, 4u, 6u}) out.graph.add_edge(VertexId{i}, VertexId{j});
        out.branch = {VertexId{1}, VertexId{3}, VertexId{5}, VertexId{2}, VertexId{4}, VertexId{6}};
        out.especial.walk = detail::simple_walk(out.graph, {1, 2, 5, 4, 3, 6, 5, 4, 1, 2, 3, 6, 1});
        out.especial.companions = {detail::simple_walk(out.graph, {1, 4, 3, 2, 5, 6, 1})};
    }
    return out;
}

/// Lifts a walk on the abstract K through a subdivision witness: every step
/// between branch vertices becomes the corresponding branch path, in
/// traversal direction.
inline Walk lift_walk_to_subdivision(const KuratowskiConstants& consts,
                                     const KuratowskiWitness& witness, const Walk& abstract_walk) {
    std::map<VertexId, int> index;
    for (int i = 0; i < static_cast<int>(consts.branch.size()); ++i) index[consts.branch[i]] = i;
    Walk out;
    bool first = true;
    VertexId at = abstract_walk.start;
    for (const auto& s : abstract_walk.steps) {
        int i = index.at(at), j = index.at(s.to);
        std::pair<int, int> key = i < j ? std::pair{i, j} : std::pair{j, i};
        const Walk& path = witness.paths.at(key);
        Walk oriented = i < j ? path : path.reversed();
        if (first) {
            out.start = oriented.start;
            first = false;
        }
        for (const auto& ps : oriented.steps) out.steps.push_back(ps);
        at = s.to;
    }
    if (first) out.start = witness.branch.at(index.at(abstract_walk.start));
    return out;
}

/// Lifts the whole especial walk (walk + companions) through a witness.
/// Conditions (i)/(ii) survive: an abstract edge traversed twice is
/// traversed twice in the same direction, so its path is too.
inline EspecialWalk lift_to_subdivision(const KuratowskiConstants& consts,
                                        const KuratowskiWitness& witness) {
    if (consts.kind != witness.kind) throw std::invalid_argument("lift_to_subdivision: kind mismatch");
    EspecialWalk out;
    out.walk = lift_walk_to_subdivision(consts, witness, consts.especial.walk);
    for (const auto& c : consts.especial.companions)
        out.companions.push_back(lift_walk_to_subdivision(consts, witness, c));
    return out;
}

namespace detail {

/// One peeling round: the earliest repeated vertex pair (minimal second
/// position, then minimal first) is split off as a cycle. For closed walks
/// the start/end closure itself does not count as a repeat.
inline std::optional<std::pair<std::size_t, std::size_t>> earliest_repeat(const Walk& w,
                                                                          bool treat_closed) {
    std::vector<VertexId> verts = w.vertex_sequence();
    std::size_t n = verts.size();
    for (std::size_t j2 = 1; j2 < n; ++j2) {
        for (std::size_t j1 = 0; j1 < j2; ++j1) {
            if (verts[j1] != verts[j2]) continue;
            if (treat_closed && j1 == 0 && j2 == n - 1) continue;
            return std::pair{j1, j2};
        }
    }
    return std::nullopt;
}

inline Walk subwalk(const Walk& w, std::size_t from, std::size_t to) {
    std::vector<VertexId> verts = w.vertex_sequence();
    Walk out;
    out.start = verts[from];
    for (std::size_t i = from; i < to; ++i) out.steps.push_back(w.steps[i]);
    return out;
}

} // namespace detail

/// Iteratively peels self-intersections of a walk into cycles. Returns the
/// peeled cycles and the non-self-intersecting residual walk (for a closed
/// input the residual is itself a cycle or empty and `residual_is_cycle`
/// says which list it belongs to conceptually).
struct PeelResult {
    std::vector<Walk> cycles;
    Walk residual;
};

inline PeelResult peel_walk(Walk w, bool closed) {
    PeelResult out;
    while (auto rep = detail::earliest_repeat(w, closed)) {
        auto [j1, j2] = *rep;
        out.cycles.push_back(detail::subwalk(w, j1, j2));
        Walk rest;
        std::vector<VertexId> verts = w.vertex_sequence();
        rest.start = verts[0];
        for (std::size_t i = 0; i < j1; ++i) rest.steps.push_back(w.steps[i]);
        for (std::size_t i = j2; i < w.steps.size(); ++i) rest.steps.push_back(w.steps[i]);
        w = std::move(rest);
    }
    out.residual = std::move(w);
    return out;
}

/// Decomposes a closed walk entirely into cycles; multiplicities of the
/// step multiset are preserved exactly.
inline std::vector<Walk> peel_closed_walk(const Walk& w) {
    if (!w.closed()) throw std::invalid_argument("peel_closed_walk: walk not closed");
    PeelResult pr = peel_walk(w, true);
    std::vector<Walk> out = std::move(pr.cycles);
    if (!pr.residual.trivial()) out.push_back(std::move(pr.residual));
    return out;
}

/// The walk-splitting procedure: cut a closed walk at the anchors' inner
/// vertices, peel each open segment's self-intersections into cycles, and
/// join the residual open walks to the anchor free edges, producing paths
/// whose terminal edges are the free edges. With no anchors the closed walk
/// is peeled entirely into cycles. Edge multiplicities are preserved
/// exactly. |anchors| = 1 is rejected, as is a non-simple host.
inline Cover split_especial_walk(const MultiGraph& host, const Walk& walk,
                                 const std::vector<FreeEdge>& anchors) {
    if (!walk.closed()) throw std::invalid_argument("split_especial_walk: walk not closed");
    if (!walk.consistent_with(host)) throw std::invalid_argument("split_especial_walk: foreign walk");
    if (!host.is_simple()) throw std::invalid_argument("split_especial_walk: host must be simple");
    if (anchors.size() == 1) throw std::invalid_argument("split_especial_walk: |anchors| = 1");

    Cover out;
    if (anchors.empty()) {
        for (Walk& c : peel_closed_walk(walk)) out.add({ElementKind::Cycle, std::move(c)});
        return out;
    }

    // Assign each anchor its first unconsumed occurrence along the walk;
    // exhausted vertices share their first occurrence (the segment between
    // equal positions is empty and the resulting path is just the two free
    // edges).
    std::vector<VertexId> verts = walk.vertex_sequence();
    std::size_t n = walk.steps.size();
    std::vector<FreeEdge> sorted_anchors = anchors;
    std::sort(sorted_anchors.begin(), sorted_anchors.end(),
              [](const FreeEdge& a, const FreeEdge& b) { return a.id < b.id; });
    std::set<std::size_t> taken;
    std::vector<std::pair<std::size_t, FreeEdge>> placed;
    for (const FreeEdge& f : sorted_anchors) {
        std::optional<std::size_t> free_pos, any_pos;
        for (std::size_t p = 0; p < n; ++p) {
            if (verts[p] != f.inner) continue;
            if (!any_pos) any_pos = p;
            if (!taken.count(p)) {
                free_pos = p;
                break;
            }
        }
        if (!any_pos) throw std::invalid_argument("split_especial_walk: anchor vertex not on walk");
        std::size_t pos = free_pos.value_or(*any_pos);
        taken.insert(pos);
        placed.emplace_back(pos, f);
    }
    std::stable_sort(placed.begin(), placed.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    // Segments between consecutive anchors tile the closed walk exactly
    // once. Equal adjacent positions give an empty segment; the final
    // segment wraps around, and covers the whole walk when the last and
    // first anchors share one position.
    std::size_t k = placed.size();
    for (std::size_t a = 0; a < k; ++a) {
        const auto& [pos, f] = placed[a];
        const auto& [next_pos, next_f] = placed[(a + 1) % k];
        Walk seg;
        seg.start = verts[pos];
        std::size_t count = (next_pos + n - pos) % n;
        if (a + 1 == k && count == 0) count = n;
        for (std::size_t i = pos, c = 0; c < count; i = (i + 1) % n, ++c)
            seg.steps.push_back(walk.steps[i]);
        PeelResult pr = peel_walk(seg, false);
        for (Walk& c : pr.cycles) out.add({ElementKind::Cycle, std::move(c)});
        Walk path;
        path.start = f.outer;
        path.append(f.id, f.inner);
        for (const auto& s : pr.residual.steps) path.steps.push_back(s);
        path.append(next_f.id, next_f.outer);
        out.add({ElementKind::Path, std::move(path)});
    }
    return out;
}

} // namespace cdc
