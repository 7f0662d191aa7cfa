#pragma once

#include <set>
#include <stdexcept>
#include <vector>

#include "cdc/ids.hpp"
#include "cdc/multigraph.hpp"

namespace cdc {

/// One step of a walk: traverse `edge` and arrive at `to`.
struct WalkStep {
    EdgeId edge;
    VertexId to;
    auto operator<=>(const WalkStep&) const = default;
};

/// A walk stored as edge-id steps. Edge identity is primary: in a multigraph
/// the vertex itinerary alone does not determine which edge was used.
struct Walk {
    VertexId start{};
    std::vector<WalkStep> steps;

    std::size_t length() const { return steps.size(); }
    bool trivial() const { return steps.empty(); }
    VertexId end() const { return steps.empty() ? start : steps.back().to; }
    bool closed() const { return end() == start; }

    /// Vertex itinerary including the start; size = length() + 1.
    std::vector<VertexId> vertex_sequence() const {
        std::vector<VertexId> seq;
        seq.reserve(steps.size() + 1);
        seq.push_back(start);
        for (const auto& s : steps) seq.push_back(s.to);
        return seq;
    }

    std::vector<EdgeId> edge_sequence() const {
        std::vector<EdgeId> seq;
        seq.reserve(steps.size());
        for (const auto& s : steps) seq.push_back(s.edge);
        return seq;
    }

    void append(EdgeId e, VertexId to) { steps.push_back({e, to}); }

    Walk reversed() const {
        Walk r;
        r.start = end();
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            VertexId prev = (it + 1 == steps.rend()) ? start : (it + 1)->to;
            r.steps.push_back({it->edge, prev});
        }
        return r;
    }

    /// Checks each step's edge joins the previous vertex to the arrival
    /// vertex in g (loops require prev == to).
    bool consistent_with(const MultiGraph& g) const {
        if (!g.has_vertex(start)) return false;
        VertexId at = start;
        for (const auto& s : steps) {
            if (!g.has_edge(s.edge)) return false;
            const Endpoints& ep = g.endpoints(s.edge);
            if (ep.is_loop()) {
                if (!(at == ep.u && s.to == ep.u)) return false;
            } else {
                if (!(ep.touches(at) && ep.other(at) == s.to)) return false;
            }
            at = s.to;
        }
        return true;
    }

    auto operator<=>(const Walk&) const = default;
};

/// Builds a walk from a vertex itinerary by choosing, at each step, the
/// smallest-id edge joining the consecutive vertices that this walk has not
/// used yet. Throws when no such edge exists.
inline Walk walk_from_vertices(const MultiGraph& g, const std::vector<VertexId>& seq) {
    if (seq.empty()) throw std::invalid_argument("walk_from_vertices: empty sequence");
    Walk w;
    w.start = seq.front();
    std::set<EdgeId> used;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        VertexId a = seq[i], b = seq[i + 1];
        EdgeId chosen{};
        bool found = false;
        for (const auto& [id, ep] : g.edges()) {
            if (used.count(id)) continue;
            bool joins = ep.is_loop() ? (a == b && ep.u == a)
                                      : (ep.touches(a) && ep.other(a) == b);
            if (joins) {
                chosen = id;
                found = true;
                break;
            }
        }
        if (!found) throw std::invalid_argument("walk_from_vertices: no edge between consecutive vertices");
        used.insert(chosen);
        w.append(chosen, b);
    }
    return w;
}

} // namespace cdc
