#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdc/ids.hpp"
#include "cdc/multigraph.hpp"

namespace cdc {

/// A pendant edge attached to a host graph: `inner` lies in the host,
/// `outer` does not and is private to this free edge.
struct FreeEdge {
    EdgeId id;
    VertexId inner;
    VertexId outer;
    auto operator<=>(const FreeEdge&) const = default;
};

/// A free edge set of a host graph G: every member has exactly one endpoint
/// in V(G) and the outer endpoints are pairwise distinct and disjoint from
/// V(G). The host is not stored; validity is checked against a graph at the
/// point of use.
class FreeEdgeSet {
public:
    FreeEdgeSet() = default;
    explicit FreeEdgeSet(std::vector<FreeEdge> entries) {
        for (const auto& f : entries) add(f);
    }

    void add(const FreeEdge& f) {
        if (by_id_.count(f.id)) throw std::invalid_argument("FreeEdgeSet: duplicate edge id");
        by_id_.emplace(f.id, f);
    }

    bool empty() const { return by_id_.empty(); }
    std::size_t size() const { return by_id_.size(); }
    bool contains(EdgeId e) const { return by_id_.count(e) != 0; }

    const FreeEdge& at(EdgeId e) const {
        auto it = by_id_.find(e);
        if (it == by_id_.end()) throw std::invalid_argument("FreeEdgeSet: unknown edge");
        return it->second;
    }

    /// Entries in ascending edge-id order.
    std::vector<FreeEdge> entries() const {
        std::vector<FreeEdge> out;
        out.reserve(by_id_.size());
        for (const auto& [id, f] : by_id_) out.push_back(f);
        return out;
    }

    std::set<VertexId> inner_vertices() const {
        std::set<VertexId> s;
        for (const auto& [id, f] : by_id_) s.insert(f.inner);
        return s;
    }

    std::set<VertexId> outer_vertices() const {
        std::set<VertexId> s;
        for (const auto& [id, f] : by_id_) s.insert(f.outer);
        return s;
    }

    /// Free edges whose inner endpoint lies in `verts`, ascending by id.
    std::vector<FreeEdge> touching(const std::set<VertexId>& verts) const {
        std::vector<FreeEdge> out;
        for (const auto& [id, f] : by_id_)
            if (verts.count(f.inner)) out.push_back(f);
        return out;
    }

    /// Returns an explanation when this set is not a valid free edge set of
    /// g, or std::nullopt when it is. Conditions: (i) inner in V(g), outer
    /// not in V(g), edge ids unknown to g; (ii) outer endpoints pairwise
    /// distinct.
    std::optional<std::string> invalid_reason(const MultiGraph& g) const {
        std::set<VertexId> outers;
        for (const auto& [id, f] : by_id_) {
            if (g.has_edge(id)) return "free edge id already present in host graph";
            if (!g.has_vertex(f.inner)) return "free edge inner endpoint not in host graph";
            if (g.has_vertex(f.outer)) return "free edge outer endpoint lies in host graph";
            if (!outers.insert(f.outer).second) return "free edge outer endpoints not pairwise distinct";
        }
        return std::nullopt;
    }

    bool valid_for(const MultiGraph& g) const { return !invalid_reason(g).has_value(); }

    void require_valid_for(const MultiGraph& g) const {
        if (auto why = invalid_reason(g)) throw std::invalid_argument("invalid free edge set: " + *why);
    }

    auto operator<=>(const FreeEdgeSet&) const = default;

private:
    std::map<EdgeId, FreeEdge> by_id_;
};

/// The host graph together with its free edges as real pendant edges.
/// This is the graph that covers of (G; F) are verified against.
inline MultiGraph union_with_free(const MultiGraph& g, const FreeEdgeSet& f) {
    f.require_valid_for(g);
    MultiGraph u = g;
    for (const auto& fe : f.entries()) {
        u.add_vertex(fe.outer);
        u.add_edge(fe.id, fe.inner, fe.outer);
    }
    return u;
}

} // namespace cdc
