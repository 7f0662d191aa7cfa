#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "cdc/free_edge_set.hpp"
#include "cdc/ids.hpp"
#include "cdc/multigraph.hpp"
#include "cdc/quotient.hpp"

namespace cdc {

/// Subgraph induced by an edge set: exactly those edges plus their
/// endpoints, ids preserved. An empty set yields the null graph.
inline MultiGraph induced_by_edges(const MultiGraph& g, const std::set<EdgeId>& a) {
    MultiGraph out;
    out.reserve_ids(g.next_vertex_counter(), g.next_edge_counter());
    for (EdgeId e : a) {
        const Endpoints& ep = g.endpoints(e); // throws on unknown id
        out.add_vertex(ep.u);
        out.add_vertex(ep.v);
    }
    for (EdgeId e : a) {
        const Endpoints& ep = g.endpoints(e);
        out.add_edge(e, ep.u, ep.v);
    }
    return out;
}

/// Subgraph induced by a vertex set: those vertices plus every edge with
/// both endpoints inside (loops included).
inline MultiGraph induced_by_vertices(const MultiGraph& g, const std::set<VertexId>& b) {
    MultiGraph out;
    out.reserve_ids(g.next_vertex_counter(), g.next_edge_counter());
    for (VertexId v : b) {
        if (!g.has_vertex(v)) throw std::invalid_argument("induced_by_vertices: unknown vertex");
        out.add_vertex(v);
    }
    for (const auto& [id, ep] : g.edges())
        if (b.count(ep.u) && b.count(ep.v)) out.add_edge(id, ep.u, ep.v);
    return out;
}

/// All edges of g between X and Y (one endpoint in each). Loops never
/// qualify.
inline std::set<EdgeId> edges_between(const MultiGraph& g, const std::set<VertexId>& x,
                                      const std::set<VertexId>& y) {
    std::set<EdgeId> out;
    for (const auto& [id, ep] : g.edges()) {
        if (ep.is_loop()) continue;
        bool ux = x.count(ep.u) != 0, vx = x.count(ep.v) != 0;
        bool uy = y.count(ep.u) != 0, vy = y.count(ep.v) != 0;
        if ((ux && vy) || (uy && vx)) out.insert(id);
    }
    return out;
}

/// The edge cut ∂(X): all non-loop edges with exactly one endpoint in X.
/// Requires ∅ ≠ X ⊊ V(g).
inline std::set<EdgeId> edge_cut(const MultiGraph& g, const std::set<VertexId>& x) {
    if (x.empty()) throw std::invalid_argument("edge_cut: X is empty");
    for (VertexId v : x)
        if (!g.has_vertex(v)) throw std::invalid_argument("edge_cut: unknown vertex");
    if (x.size() == g.vertex_count()) throw std::invalid_argument("edge_cut: X is all of V");
    std::set<EdgeId> out;
    for (const auto& [id, ep] : g.edges()) {
        if (ep.is_loop()) continue;
        if ((x.count(ep.u) != 0) != (x.count(ep.v) != 0)) out.insert(id);
    }
    return out;
}

/// Records how one edge was replaced by two halves through a fresh vertex.
struct SubdivisionRecord {
    EdgeId original;
    VertexId mid;
    EdgeId half1; // incident to original's stored u
    EdgeId half2; // incident to original's stored v
};

struct SubdivisionProvenance {
    std::map<EdgeId, SubdivisionRecord> records; // keyed by original edge
};

struct SubdivideResult {
    MultiGraph graph;
    VertexId mid;
    SubdivisionRecord record;
};

/// Replaces e = uv by u–w and w–v through a fresh vertex w. Subdividing a
/// loop at u yields two parallel edges u–w.
inline SubdivideResult subdivide_edge(const MultiGraph& g, EdgeId e) {
    Endpoints ep = g.endpoints(e);
    MultiGraph out = g;
    out.remove_edge(e);
    VertexId mid = out.add_vertex();
    EdgeId h1 = out.add_edge(ep.u, mid);
    EdgeId h2 = out.add_edge(mid, ep.v);
    return {std::move(out), mid, SubdivisionRecord{e, mid, h1, h2}};
}

/// Result of cutting off an edge e = u u': the graph without e plus two
/// pendant free edges f = u w and f' = u' w' with fresh outer vertices.
struct CutOffResult {
    MultiGraph graph; // g minus e (counters bumped past the pendants)
    FreeEdge f;       // pendant at e's stored first endpoint
    FreeEdge f_prime; // pendant at e's stored second endpoint
};

/// Cut off e: subdivide, then split at the new vertex. Loops are rejected;
/// splitting a subdivided loop has no well-defined sides.
inline CutOffResult cut_off(const MultiGraph& g, EdgeId e) {
    Endpoints ep = g.endpoints(e);
    if (ep.is_loop()) throw std::invalid_argument("cut_off: loop edges cannot be cut off");
    MultiGraph out = g;
    out.remove_edge(e);
    VertexId w{out.next_vertex_counter()};
    VertexId w2{out.next_vertex_counter() + 1};
    EdgeId fid{out.next_edge_counter()};
    EdgeId fid2{out.next_edge_counter() + 1};
    out.reserve_ids(w2.value + 1, fid2.value + 1);
    return {std::move(out), FreeEdge{fid, ep.u, w}, FreeEdge{fid2, ep.v, w2}};
}

namespace detail {

class UnionFind {
public:
    VertexId find(VertexId v) {
        auto it = parent_.find(v);
        if (it == parent_.end()) return v;
        VertexId root = find(it->second);
        parent_[v] = root;
        return root;
    }
    /// Union by minimum id: the class representative is its smallest member.
    void unite(VertexId a, VertexId b) {
        VertexId ra = find(a), rb = find(b);
        if (ra == rb) return;
        if (rb < ra) std::swap(ra, rb);
        parent_[rb] = ra;
    }

private:
    std::map<VertexId, VertexId> parent_;
};

} // namespace detail

struct IdentifyResult {
    MultiGraph graph;
    QuotientMap map;
};

/// G / A_1, ..., A_k: identifies all members of each A_i; overlapping
/// families are merged transitively. The representative of each merged
/// class is its minimum vertex id. Edges keep their ids; endpoints are
/// mapped, so loops and parallel edges may appear. identify(g, {}) == g.
inline IdentifyResult identify(const MultiGraph& g, const std::vector<std::set<VertexId>>& families) {
    detail::UnionFind uf;
    for (const auto& fam : families) {
        for (VertexId v : fam)
            if (!g.has_vertex(v)) throw std::invalid_argument("identify: unknown vertex");
        if (fam.empty()) continue;
        VertexId first = *fam.begin();
        for (VertexId v : fam) uf.unite(first, v);
    }
    MultiGraph out;
    out.reserve_ids(g.next_vertex_counter(), g.next_edge_counter());
    QuotientMap qm;
    for (VertexId v : g.vertices()) {
        VertexId img = uf.find(v);
        qm.forward.emplace(v, img);
        out.add_vertex(img);
    }
    for (const auto& [id, ep] : g.edges()) out.add_edge(id, uf.find(ep.u), uf.find(ep.v));
    return {std::move(out), std::move(qm)};
}

struct ConeResult {
    MultiGraph graph;
    QuotientMap map;   // from g ∪ ⟨F⟩ onto the cone
    VertexId apex{};   // meaningful only when F nonempty
    bool has_apex = false;
};

/// cone(G; F): the union G ∪ ⟨F⟩ with all outer endpoints of F identified
/// into a single apex. cone(G; ∅) is G itself, with no apex added.
inline ConeResult cone(const MultiGraph& g, const FreeEdgeSet& f) {
    f.require_valid_for(g);
    MultiGraph u = union_with_free(g, f);
    if (f.empty()) {
        QuotientMap qm;
        for (VertexId v : u.vertices()) qm.forward.emplace(v, v);
        return {std::move(u), std::move(qm), VertexId{}, false};
    }
    IdentifyResult res = identify(u, {f.outer_vertices()});
    VertexId apex = *f.outer_vertices().begin();
    return {std::move(res.graph), std::move(res.map), apex, true};
}

/// Provenance of the underlying-simple reduction: which loops were removed
/// and, per surviving representative edge, the full parallel class it
/// stands for (representative first, ascending ids).
struct SimpleProvenance {
    std::vector<std::pair<EdgeId, VertexId>> loops;             // ascending edge id
    std::map<EdgeId, std::vector<EdgeId>> parallel_classes;     // only classes of size >= 2
};

struct SimpleResult {
    MultiGraph graph;
    SimpleProvenance provenance;
};

/// Underlying simple graph: loops removed, each parallel class collapsed to
/// its minimum-id representative.
inline SimpleResult underlying_simple(const MultiGraph& g) {
    SimpleResult res;
    res.graph.reserve_ids(g.next_vertex_counter(), g.next_edge_counter());
    for (VertexId v : g.vertices()) res.graph.add_vertex(v);
    std::map<std::pair<VertexId, VertexId>, std::vector<EdgeId>> classes;
    for (const auto& [id, ep] : g.edges()) {
        if (ep.is_loop()) {
            res.provenance.loops.emplace_back(id, ep.u);
            continue;
        }
        classes[ep.key()].push_back(id);
    }
    for (auto& [key, ids] : classes) {
        std::sort(ids.begin(), ids.end());
        // keep the representative's stored endpoint order so that edge-end
        // (dart) conventions agree between g and the reduction
        const Endpoints& orig = g.endpoints(ids.front());
        res.graph.add_edge(ids.front(), orig.u, orig.v);
        if (ids.size() >= 2) res.provenance.parallel_classes.emplace(ids.front(), ids);
    }
    return res;
}

} // namespace cdc
