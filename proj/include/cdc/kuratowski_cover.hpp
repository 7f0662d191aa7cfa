#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "cdc/cover.hpp"
#include "cdc/especial.hpp"
#include "cdc/free_edge_set.hpp"
#include "cdc/graph_ops.hpp"
#include "cdc/multigraph.hpp"
#include "cdc/splice.hpp"
#include "cdc/witness.hpp"

namespace cdc {

/// E_1(H) and E_2(H): edges of g outside H with exactly one, respectively
/// two, endpoints in V(H).
struct AttachmentSets {
    std::set<EdgeId> e1;
    std::set<EdgeId> e2;
};

inline AttachmentSets attachment_sets(const MultiGraph& g, const MultiGraph& h) {
    for (VertexId v : h.vertices())
        if (!g.has_vertex(v)) throw std::invalid_argument("attachment_sets: H is not a subgraph");
    for (const auto& [id, ep] : h.edges())
        if (!g.has_edge(id)) throw std::invalid_argument("attachment_sets: H is not a subgraph");
    AttachmentSets out;
    for (const auto& [id, ep] : g.edges()) {
        if (h.has_edge(id)) continue;
        std::set<VertexId> ends{ep.u, ep.v};
        std::size_t inside = 0;
        for (VertexId v : ends)
            if (h.has_vertex(v)) ++inside;
        if (inside == 2) out.e2.insert(id);
        else if (inside == 1) out.e1.insert(id);
    }
    return out;
}

/// ncdc of a Kuratowski major (a graph that is in its entirety a
/// subdivision of K5 or K3,3) against a free edge set with |F| != 1:
/// the fixed especial walk is lifted through the subdivision, split at the
/// free-edge anchors, and completed by the lifted companion cycles.
inline Cover ncdc_kuratowski_major(const MultiGraph& k, const FreeEdgeSet& f) {
    f.require_valid_for(k);
    if (f.size() == 1)
        throw std::invalid_argument("ncdc_kuratowski_major: |F| = 1 cannot be covered");
    auto wit = recognize_kuratowski(k);
    if (!wit) throw std::invalid_argument("ncdc_kuratowski_major: graph is not a Kuratowski major");
    KuratowskiConstants consts = especial_constants(wit->kind);
    EspecialWalk lifted = lift_to_subdivision(consts, *wit);
    Cover out = split_especial_walk(k, lifted.walk, f.entries());
    for (const Walk& c : lifted.companions) out.add({ElementKind::Cycle, c});
    return out;
}

/// ncdc of a Kuratowski major together with its chords (edges joining two
/// major vertices): every chord is cut off, the major is covered against
/// the enlarged free set, and the chords are spliced back. The graph
/// `k_with_chords` must be exactly major ∪ chords.
inline Cover ncdc_major_with_chords(const MultiGraph& k_with_chords, const std::set<EdgeId>& chords,
                                    const FreeEdgeSet& f) {
    f.require_valid_for(k_with_chords);
    if (chords.empty() && f.size() == 1)
        throw std::invalid_argument("ncdc_major_with_chords: |F| = 1 with no chords");
    MultiGraph cur = k_with_chords;
    // keep fresh pendant ids clear of the caller's free-edge ids
    for (const FreeEdge& fe : f.entries())
        cur.reserve_ids(fe.outer.value + 1, fe.id.value + 1);
    FreeEdgeSet enlarged = f;
    std::vector<CutPendants> cuts;
    for (EdgeId chord : chords) {
        CutOffResult res = cut_off(cur, chord);
        cuts.push_back(make_cut_pendants(chord, res));
        cur = std::move(res.graph);
        enlarged.add(res.f);
        enlarged.add(res.f_prime);
    }
    Cover cover = ncdc_kuratowski_major(cur, enlarged);
    for (auto it = cuts.rbegin(); it != cuts.rend(); ++it) cover = splice_cut_edge(cover, *it);
    return cover;
}

} // namespace cdc
