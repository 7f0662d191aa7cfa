#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stack>
#include <string>
#include <vector>

#include "cdc/free_edge_set.hpp"
#include "cdc/graph_ops.hpp"
#include "cdc/multigraph.hpp"

namespace cdc {

/// Maximal connected vertex sets, ordered by their minimum vertex id.
inline std::vector<std::set<VertexId>> connectivity_components(const MultiGraph& g) {
    std::map<VertexId, std::vector<std::pair<EdgeId, VertexId>>> adj;
    for (VertexId v : g.vertices()) adj[v];
    for (const auto& [id, ep] : g.edges()) {
        if (ep.is_loop()) continue;
        adj[ep.u].emplace_back(id, ep.v);
        adj[ep.v].emplace_back(id, ep.u);
    }
    std::set<VertexId> seen;
    std::vector<std::set<VertexId>> out;
    for (VertexId root : g.vertices()) {
        if (seen.count(root)) continue;
        std::set<VertexId> comp;
        std::stack<VertexId> todo;
        todo.push(root);
        seen.insert(root);
        while (!todo.empty()) {
            VertexId v = todo.top();
            todo.pop();
            comp.insert(v);
            for (const auto& [e, w] : adj[v])
                if (seen.insert(w).second) todo.push(w);
        }
        out.push_back(std::move(comp));
    }
    return out;
}

/// Cut edges of g found by one DFS low-link pass. Parallel edges are
/// distinguished by edge id, so a class of size >= 2 never yields a bridge;
/// loops never do either.
inline std::set<EdgeId> bridges(const MultiGraph& g) {
    std::map<VertexId, std::vector<std::pair<EdgeId, VertexId>>> adj;
    for (VertexId v : g.vertices()) adj[v];
    for (const auto& [id, ep] : g.edges()) {
        if (ep.is_loop()) continue;
        adj[ep.u].emplace_back(id, ep.v);
        adj[ep.v].emplace_back(id, ep.u);
    }
    std::map<VertexId, int> tin, low;
    int timer = 0;
    std::set<EdgeId> out;

    struct Frame {
        VertexId v;
        EdgeId via;     // tree edge into v (unused for roots)
        bool has_via;
        std::size_t next = 0;
    };
    for (VertexId root : g.vertices()) {
        if (tin.count(root)) continue;
        std::stack<Frame> st;
        st.push({root, EdgeId{}, false});
        tin[root] = low[root] = timer++;
        while (!st.empty()) {
            Frame& fr = st.top();
            if (fr.next < adj[fr.v].size()) {
                auto [e, to] = adj[fr.v][fr.next++];
                if (fr.has_via && e == fr.via) continue; // the tree edge itself, by id
                if (tin.count(to)) {
                    low[fr.v] = std::min(low[fr.v], tin[to]);
                } else {
                    tin[to] = low[to] = timer++;
                    st.push({to, e, true});
                }
            } else {
                Frame done = fr;
                st.pop();
                if (done.has_via) {
                    VertexId parent = st.top().v;
                    low[parent] = std::min(low[parent], low[done.v]);
                    if (low[done.v] > tin[parent]) out.insert(done.via);
                }
            }
        }
    }
    return out;
}

/// Partition of V(g) into maximal connected bridgeless subgraphs
/// (2-edge-connected components; singletons allowed), plus the bridge set.
struct BridgelessDecomposition {
    std::vector<std::set<VertexId>> components; // ordered by min vertex id
    std::set<EdgeId> bridge_edges;
    std::map<VertexId, std::size_t> component_of;

    std::size_t index_of(VertexId v) const { return component_of.at(v); }
};

inline BridgelessDecomposition bridgeless_decomposition(const MultiGraph& g) {
    BridgelessDecomposition d;
    d.bridge_edges = bridges(g);
    MultiGraph stripped = g;
    for (EdgeId b : d.bridge_edges) stripped.remove_edge(b);
    d.components = connectivity_components(stripped);
    for (std::size_t i = 0; i < d.components.size(); ++i)
        for (VertexId v : d.components[i]) d.component_of.emplace(v, i);
    return d;
}

/// The bridgeless component tree T_G (a forest for disconnected g): one
/// node per bridgeless component, one tree edge per bridge.
struct ComponentTree {
    std::size_t node_count = 0;
    std::vector<std::pair<EdgeId, std::pair<std::size_t, std::size_t>>> tree_edges;
    std::vector<std::size_t> degree; // per node

    std::size_t tree_degree(std::size_t node) const { return degree.at(node); }
};

inline ComponentTree component_tree(const MultiGraph& g, const BridgelessDecomposition& d) {
    ComponentTree t;
    t.node_count = d.components.size();
    t.degree.assign(t.node_count, 0);
    for (EdgeId b : d.bridge_edges) {
        const Endpoints& ep = g.endpoints(b);
        std::size_t cu = d.index_of(ep.u), cv = d.index_of(ep.v);
        t.tree_edges.emplace_back(b, std::pair{cu, cv});
        ++t.degree[cu];
        ++t.degree[cv];
    }
    return t;
}

enum class ComponentKind { Terminal, Isolated, Internal };

inline const char* to_string(ComponentKind k) {
    switch (k) {
        case ComponentKind::Terminal: return "terminal";
        case ComponentKind::Isolated: return "isolated";
        case ComponentKind::Internal: return "internal";
    }
    return "?";
}

/// terminal = exactly one incident bridge, isolated = none, else internal.
inline std::vector<ComponentKind> classify(const BridgelessDecomposition& d, const ComponentTree& t) {
    std::vector<ComponentKind> out(d.components.size());
    for (std::size_t i = 0; i < d.components.size(); ++i) {
        switch (t.tree_degree(i)) {
            case 0: out[i] = ComponentKind::Isolated; break;
            case 1: out[i] = ComponentKind::Terminal; break;
            default: out[i] = ComponentKind::Internal; break;
        }
    }
    return out;
}

struct SurroundingCheck {
    bool ok = true;
    std::optional<std::size_t> violating_component;
    std::string reason;
};

/// F is surrounding when every terminal bridgeless component is touched by
/// at least one free edge and no isolated component is touched by exactly
/// one. Touch counts are by free edge, matching the covering arguments:
/// a single attaching edge would be a cut edge of the cone.
inline SurroundingCheck is_surrounding(const MultiGraph& g, const FreeEdgeSet& f) {
    f.require_valid_for(g);
    BridgelessDecomposition d = bridgeless_decomposition(g);
    ComponentTree t = component_tree(g, d);
    std::vector<ComponentKind> kinds = classify(d, t);
    std::vector<std::size_t> touch(d.components.size(), 0);
    for (const auto& fe : f.entries()) touch[d.index_of(fe.inner)]++;
    for (std::size_t i = 0; i < d.components.size(); ++i) {
        if (kinds[i] == ComponentKind::Terminal && touch[i] == 0)
            return {false, i, "terminal bridgeless component untouched by F"};
        if (kinds[i] == ComponentKind::Isolated && touch[i] == 1)
            return {false, i, "isolated bridgeless component touched by exactly one free edge"};
    }
    return {};
}

/// [G]_F : the union of the connectivity components of g that meet the
/// inner endpoints of F.
inline MultiGraph restrict_to_touched(const MultiGraph& g, const FreeEdgeSet& f) {
    f.require_valid_for(g);
    std::set<VertexId> inner = f.inner_vertices();
    std::set<VertexId> keep;
    for (const auto& comp : connectivity_components(g)) {
        bool touched = std::any_of(comp.begin(), comp.end(),
                                   [&](VertexId v) { return inner.count(v) != 0; });
        if (touched) keep.insert(comp.begin(), comp.end());
    }
    return induced_by_vertices(g, keep);
}

} // namespace cdc
