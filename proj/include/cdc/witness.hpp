#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdc/graph_ops.hpp"
#include "cdc/multigraph.hpp"
#include "cdc/walk.hpp"

namespace cdc {

enum class KuratowskiKind { K5, K33 };

inline const char* to_string(KuratowskiKind k) { return k == KuratowskiKind::K5 ? "K5" : "K33"; }

/// A subdivision of K5 or K3,3 inside a host graph. `branch` lists the
/// branch vertices: all five for K5; for K3,3 the first three form one side
/// of the bipartition. `paths` maps each K-edge, keyed by branch indices
/// (i, j) with i < j, to an internally disjoint path walk oriented
/// branch[i] -> branch[j].
struct KuratowskiWitness {
    KuratowskiKind kind = KuratowskiKind::K5;
    std::vector<VertexId> branch;
    std::map<std::pair<int, int>, Walk> paths;

    /// The branch-index pairs K requires: all 10 pairs for K5, the 9
    /// cross-pairs for K3,3.
    static std::vector<std::pair<int, int>> required_pairs(KuratowskiKind kind) {
        std::vector<std::pair<int, int>> out;
        if (kind == KuratowskiKind::K5) {
            for (int i = 0; i < 5; ++i)
                for (int j = i + 1; j < 5; ++j) out.emplace_back(i, j);
        } else {
            for (int i = 0; i < 3; ++i)
                for (int j = 3; j < 6; ++j) out.emplace_back(i, j);
        }
        return out;
    }

    std::set<EdgeId> edge_set() const {
        std::set<EdgeId> out;
        for (const auto& [key, w] : paths)
            for (const auto& s : w.steps) out.insert(s.edge);
        return out;
    }

    std::set<VertexId> vertex_set() const {
        std::set<VertexId> out(branch.begin(), branch.end());
        for (const auto& [key, w] : paths)
            for (VertexId v : w.vertex_sequence()) out.insert(v);
        return out;
    }

    /// The witness subgraph of the host.
    MultiGraph subgraph(const MultiGraph& host) const { return induced_by_edges(host, edge_set()); }

    /// Full structural validation against the host: correct pair set, paths
    /// joining the prescribed branch vertices, internal disjointness, and
    /// the union being a genuine subdivision of K.
    std::optional<std::string> invalid_reason(const MultiGraph& host) const {
        std::size_t want_branch = kind == KuratowskiKind::K5 ? 5 : 6;
        if (branch.size() != want_branch) return "wrong number of branch vertices";
        std::set<VertexId> bset(branch.begin(), branch.end());
        if (bset.size() != want_branch) return "branch vertices not distinct";
        auto pairs = required_pairs(kind);
        if (paths.size() != pairs.size()) return "wrong number of branch paths";
        std::set<VertexId> interior_seen;
        std::set<EdgeId> edges_seen;
        for (auto [i, j] : pairs) {
            auto it = paths.find({i, j});
            if (it == paths.end()) return "missing branch path";
            const Walk& w = it->second;
            if (w.steps.empty()) return "empty branch path";
            if (!w.consistent_with(host)) return "branch path not a walk of the host";
            if (w.start != branch[i] || w.end() != branch[j]) return "branch path joins wrong vertices";
            std::vector<VertexId> verts = w.vertex_sequence();
            std::set<VertexId> internal(verts.begin() + 1, verts.end() - 1);
            if (internal.size() != verts.size() - 2) return "branch path repeats a vertex";
            for (VertexId v : internal) {
                if (bset.count(v)) return "branch path passes through a branch vertex";
                if (!interior_seen.insert(v).second) return "branch paths not internally disjoint";
            }
            for (const auto& s : w.steps)
                if (!edges_seen.insert(s.edge).second) return "branch paths share an edge";
        }
        return std::nullopt;
    }
};

/// Decides whether g is, in its entirety, a subdivision of K5 or K3,3 and
/// if so returns the witness over g itself. Branch vertices and paths are
/// produced in canonical (ascending id) order.
inline std::optional<KuratowskiWitness> recognize_kuratowski(const MultiGraph& g) {
    if (!g.is_simple()) return std::nullopt;
    std::vector<VertexId> branch;
    for (VertexId v : g.vertices()) {
        std::size_t d = g.degree(v);
        if (d == 2) continue;
        if (d == 3 || d == 4) branch.push_back(v);
        else return std::nullopt;
    }
    KuratowskiKind kind;
    if (branch.size() == 5 &&
        std::all_of(branch.begin(), branch.end(), [&](VertexId v) { return g.degree(v) == 4; }))
        kind = KuratowskiKind::K5;
    else if (branch.size() == 6 &&
             std::all_of(branch.begin(), branch.end(), [&](VertexId v) { return g.degree(v) == 3; }))
        kind = KuratowskiKind::K33;
    else
        return std::nullopt;

    std::set<VertexId> bset(branch.begin(), branch.end());
    std::map<VertexId, std::vector<std::pair<EdgeId, VertexId>>> adj;
    for (const auto& [id, ep] : g.edges()) {
        adj[ep.u].emplace_back(id, ep.v);
        adj[ep.v].emplace_back(id, ep.u);
    }
    // Trace each branch path once, starting from its lower-id incident edge.
    std::set<EdgeId> used;
    std::vector<std::pair<std::pair<VertexId, VertexId>, Walk>> traced;
    for (VertexId b : branch) {
        std::sort(adj[b].begin(), adj[b].end());
        for (const auto& [e0, n0] : adj[b]) {
            if (used.count(e0)) continue;
            Walk w;
            w.start = b;
            used.insert(e0);
            w.append(e0, n0);
            VertexId prev = b, cur = n0;
            while (!bset.count(cur)) {
                bool advanced = false;
                for (const auto& [e, nxt] : adj[cur]) {
                    if (used.count(e)) continue;
                    used.insert(e);
                    w.append(e, nxt);
                    prev = cur;
                    cur = nxt;
                    advanced = true;
                    break;
                }
                if (!advanced) return std::nullopt; // dangling degree-2 chain
            }
            if (cur == b) return std::nullopt; // path returned to its origin
            traced.push_back({{b, cur}, std::move(w)});
        }
    }
    if (used.size() != g.edge_count()) return std::nullopt;

    KuratowskiWitness wit;
    wit.kind = kind;
    if (kind == KuratowskiKind::K5) {
        wit.branch = branch; // ascending already
    } else {
        // Recover the bipartition by 2-colouring branch adjacency.
        std::map<VertexId, int> colour;
        std::map<VertexId, std::set<VertexId>> nbr;
        for (const auto& [ends, w] : traced) nbr[ends.first].insert(ends.second), nbr[ends.second].insert(ends.first);
        colour[branch.front()] = 0;
        std::vector<VertexId> todo{branch.front()};
        while (!todo.empty()) {
            VertexId v = todo.back();
            todo.pop_back();
            for (VertexId w : nbr[v]) {
                if (!colour.count(w)) {
                    colour[w] = 1 - colour[v];
                    todo.push_back(w);
                } else if (colour[w] == colour[v]) {
                    return std::nullopt;
                }
            }
        }
        std::vector<VertexId> side0, side1;
        for (VertexId v : branch) {
            if (!colour.count(v)) return std::nullopt;
            (colour[v] == 0 ? side0 : side1).push_back(v);
        }
        if (side0.size() != 3 || side1.size() != 3) return std::nullopt;
        wit.branch = side0;
        wit.branch.insert(wit.branch.end(), side1.begin(), side1.end());
    }
    std::map<VertexId, int> index;
    for (int i = 0; i < static_cast<int>(wit.branch.size()); ++i) index[wit.branch[i]] = i;
    for (auto& [ends, w] : traced) {
        int i = index[ends.first], j = index[ends.second];
        if (i == j) return std::nullopt;
        std::pair<int, int> key = i < j ? std::pair{i, j} : std::pair{j, i};
        Walk oriented = i < j ? w : w.reversed();
        if (!wit.paths.emplace(key, std::move(oriented)).second)
            return std::nullopt; // two paths for one K-edge
    }
    if (wit.invalid_reason(g)) return std::nullopt;
    return wit;
}

} // namespace cdc
