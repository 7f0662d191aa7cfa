#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cdc/ids.hpp"

namespace cdc {

/// Unordered endpoint pair of an edge. first <= second is NOT required;
/// the pair is kept in insertion form so provenance stays readable,
/// but comparisons treat it as unordered via key().
struct Endpoints {
    VertexId u;
    VertexId v;

    bool is_loop() const { return u == v; }
    std::pair<VertexId, VertexId> key() const { return u <= v ? std::pair{u, v} : std::pair{v, u}; }
    VertexId other(VertexId w) const {
        if (w == u) return v;
        if (w == v) return u;
        throw std::invalid_argument("Endpoints::other: vertex not an endpoint");
    }
    bool touches(VertexId w) const { return w == u || w == v; }
};

/// Undirected multigraph with stable ids. Loops and parallel edges are
/// allowed. Values are immutable in spirit: the mutating methods exist to
/// build a graph, after which operations in graph_ops.hpp treat graphs as
/// values and return fresh ones. Iteration order is deterministic (ordered
/// containers keyed by id).
class MultiGraph {
public:
    MultiGraph() = default;

    // -- construction ------------------------------------------------------

    VertexId add_vertex() {
        VertexId id{next_vertex_};
        ++next_vertex_;
        vertices_.insert(id);
        return id;
    }

    /// Inserts a vertex with a caller-chosen id (used by parsers and by
    /// operations that preserve ids). Bumps the allocation counter past it.
    void add_vertex(VertexId id) {
        vertices_.insert(id);
        next_vertex_ = std::max(next_vertex_, id.value + 1);
    }

    EdgeId add_edge(VertexId u, VertexId v) {
        require_vertex(u);
        require_vertex(v);
        EdgeId id{next_edge_};
        ++next_edge_;
        edges_.emplace(id, Endpoints{u, v});
        return id;
    }

    void add_edge(EdgeId id, VertexId u, VertexId v) {
        require_vertex(u);
        require_vertex(v);
        if (edges_.count(id)) throw std::invalid_argument("add_edge: duplicate edge id");
        edges_.emplace(id, Endpoints{u, v});
        next_edge_ = std::max(next_edge_, id.value + 1);
    }

    void remove_edge(EdgeId id) {
        if (!edges_.erase(id)) throw std::invalid_argument("remove_edge: unknown edge");
    }

    /// Removes a vertex and every incident edge.
    void remove_vertex(VertexId v) {
        require_vertex(v);
        for (auto it = edges_.begin(); it != edges_.end();) {
            if (it->second.touches(v)) it = edges_.erase(it);
            else ++it;
        }
        vertices_.erase(v);
    }

    /// Ensures future fresh ids start at or beyond the given counters.
    void reserve_ids(std::uint32_t next_vertex, std::uint32_t next_edge) {
        next_vertex_ = std::max(next_vertex_, next_vertex);
        next_edge_ = std::max(next_edge_, next_edge);
    }

    // -- queries -----------------------------------------------------------

    const std::set<VertexId>& vertices() const { return vertices_; }
    const std::map<EdgeId, Endpoints>& edges() const { return edges_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    bool empty() const { return vertices_.empty(); }

    bool has_vertex(VertexId v) const { return vertices_.count(v) != 0; }
    bool has_edge(EdgeId e) const { return edges_.count(e) != 0; }

    const Endpoints& endpoints(EdgeId e) const {
        auto it = edges_.find(e);
        if (it == edges_.end()) throw std::invalid_argument("endpoints: unknown edge");
        return it->second;
    }

    /// Incident edges in ascending edge-id order; loops appear once.
    std::vector<EdgeId> incident_edges(VertexId v) const {
        require_vertex(v);
        std::vector<EdgeId> out;
        for (const auto& [id, ep] : edges_)
            if (ep.touches(v)) out.push_back(id);
        return out;
    }

    /// Degree counts loops twice.
    std::size_t degree(VertexId v) const {
        require_vertex(v);
        std::size_t d = 0;
        for (const auto& [id, ep] : edges_) {
            if (ep.is_loop()) {
                if (ep.u == v) d += 2;
            } else if (ep.touches(v)) {
                ++d;
            }
        }
        return d;
    }

    bool is_simple() const {
        std::set<std::pair<VertexId, VertexId>> seen;
        for (const auto& [id, ep] : edges_) {
            if (ep.is_loop()) return false;
            if (!seen.insert(ep.key()).second) return false;
        }
        return true;
    }

    std::uint32_t next_vertex_counter() const { return next_vertex_; }
    std::uint32_t next_edge_counter() const { return next_edge_; }

    /// Labeled equality: same vertex set, same edge ids with the same
    /// unordered endpoints. Counters are ignored.
    friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
        if (a.vertices_ != b.vertices_) return false;
        if (a.edges_.size() != b.edges_.size()) return false;
        for (const auto& [id, ep] : a.edges_) {
            auto it = b.edges_.find(id);
            if (it == b.edges_.end() || it->second.key() != ep.key()) return false;
        }
        return true;
    }

private:
    void require_vertex(VertexId v) const {
        if (!vertices_.count(v)) throw std::invalid_argument("unknown vertex");
    }

    std::set<VertexId> vertices_;
    std::map<EdgeId, Endpoints> edges_;
    std::uint32_t next_vertex_ = 0;
    std::uint32_t next_edge_ = 0;
};

/// Convenience builder: n vertices 0..n-1, edges in the given order.
inline MultiGraph make_graph(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edge_list) {
    MultiGraph g;
    for (std::uint32_t i = 0; i < n; ++i) g.add_vertex(VertexId{i});
    for (auto [u, v] : edge_list) g.add_edge(VertexId{u}, VertexId{v});
    return g;
}

} // namespace cdc
