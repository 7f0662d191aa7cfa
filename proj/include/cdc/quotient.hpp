#pragma once

#include <map>
#include <stdexcept>

#include "cdc/ids.hpp"

namespace cdc {

/// Vertex map of a quotient (identification) together with the edge
/// correspondence. For the identifications used here edge ids survive
/// unchanged, so the edge correspondence is stored only where it differs
/// from the identity.
struct QuotientMap {
    std::map<VertexId, VertexId> forward;      // total on source vertices
    std::map<EdgeId, EdgeId> edge_forward;     // identity where absent

    VertexId map_vertex(VertexId v) const {
        auto it = forward.find(v);
        if (it == forward.end()) throw std::invalid_argument("QuotientMap: vertex not in source");
        return it->second;
    }

    EdgeId map_edge(EdgeId e) const {
        auto it = edge_forward.find(e);
        return it == edge_forward.end() ? e : it->second;
    }

    /// this ∘ inner : applies `inner` first, then this map.
    QuotientMap compose_after(const QuotientMap& inner) const {
        QuotientMap out;
        for (const auto& [v, mid] : inner.forward) out.forward.emplace(v, map_vertex(mid));
        for (const auto& [e, mid] : inner.edge_forward) out.edge_forward.emplace(e, map_edge(mid));
        for (const auto& [e, img] : edge_forward)
            if (!out.edge_forward.count(e)) out.edge_forward.emplace(e, img);
        return out;
    }
};

} // namespace cdc
