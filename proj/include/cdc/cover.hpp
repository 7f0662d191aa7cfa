#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cdc/free_edge_set.hpp"
#include "cdc/multigraph.hpp"
#include "cdc/walk.hpp"

namespace cdc {

enum class ElementKind { Cycle, Path };

inline const char* to_string(ElementKind k) { return k == ElementKind::Cycle ? "cycle" : "path"; }

/// One member of a cover: a cycle (closed, no repeated edge, no repeated
/// vertex besides the closure) or an open path (all vertices distinct).
/// Both carry the full edge-id walk, because vertex itineraries are
/// ambiguous in multigraphs.
struct CoverElement {
    ElementKind kind = ElementKind::Cycle;
    Walk walk;

    std::vector<EdgeId> edge_sequence() const { return walk.edge_sequence(); }

    /// Terminal edges of a path: first and last step.
    std::pair<EdgeId, EdgeId> terminal_edges() const {
        return {walk.steps.front().edge, walk.steps.back().edge};
    }

    /// Structural validity against a graph; reports the first problem.
    std::optional<std::string> invalid_reason(const MultiGraph& g) const {
        if (walk.steps.empty()) return "element has no edges";
        if (!walk.consistent_with(g)) return "walk not consistent with graph";
        std::set<EdgeId> edges_seen;
        for (const auto& s : walk.steps)
            if (!edges_seen.insert(s.edge).second) return "repeated edge within element";
        std::vector<VertexId> verts = walk.vertex_sequence();
        if (kind == ElementKind::Cycle) {
            if (!walk.closed()) return "cycle not closed";
            std::set<VertexId> interior(verts.begin() + 1, verts.end() - 1);
            if (interior.size() != verts.size() - 2) return "cycle repeats an interior vertex";
            if (interior.count(walk.start)) return "cycle revisits its start vertex";
        } else {
            if (walk.closed()) return "path is closed";
            std::set<VertexId> all(verts.begin(), verts.end());
            if (all.size() != verts.size()) return "path repeats a vertex";
        }
        return std::nullopt;
    }

    auto operator<=>(const CoverElement&) const = default;
};

namespace detail {

inline std::vector<EdgeId> rotate_edges(const std::vector<EdgeId>& seq, std::size_t k) {
    std::vector<EdgeId> out;
    out.reserve(seq.size());
    for (std::size_t i = 0; i < seq.size(); ++i) out.push_back(seq[(i + k) % seq.size()]);
    return out;
}

} // namespace detail

/// Canonical form: cycles are rotated/reflected to the lexicographically
/// minimal edge-id sequence; paths are oriented to the smaller direction.
inline CoverElement canonicalize(const CoverElement& el) {
    if (el.kind == ElementKind::Path) {
        CoverElement rev{el.kind, el.walk.reversed()};
        return rev.edge_sequence() < el.edge_sequence() ? rev : el;
    }
    CoverElement best = el;
    std::vector<EdgeId> best_seq = el.edge_sequence();
    auto consider = [&](const Walk& w) {
        std::vector<EdgeId> seq;
        for (const auto& s : w.steps) seq.push_back(s.edge);
        if (seq < best_seq) {
            best_seq = seq;
            best = CoverElement{el.kind, w};
        }
    };
    Walk fwd = el.walk;
    Walk bwd = el.walk.reversed();
    for (std::size_t k = 0; k < el.walk.steps.size(); ++k) {
        for (const Walk* base : {&fwd, &bwd}) {
            Walk rot;
            std::size_t n = base->steps.size();
            rot.start = (k == 0) ? base->start : base->steps[k - 1].to;
            for (std::size_t i = 0; i < n; ++i) rot.steps.push_back(base->steps[(k + i) % n]);
            consider(rot);
        }
    }
    return best;
}

/// A multiset of cover elements. Elements may repeat (a cycle used twice is
/// legal and sometimes necessary).
struct Cover {
    std::vector<CoverElement> elements;

    void add(CoverElement el) { elements.push_back(std::move(el)); }
    void add_all(const Cover& other) {
        elements.insert(elements.end(), other.elements.begin(), other.elements.end());
    }
    std::size_t size() const { return elements.size(); }

    /// Elements canonicalized and sorted by (kind, edge-id sequence);
    /// cycle < path.
    Cover canonical() const {
        Cover out;
        out.elements.reserve(elements.size());
        for (const auto& el : elements) out.elements.push_back(canonicalize(el));
        std::sort(out.elements.begin(), out.elements.end(),
                  [](const CoverElement& a, const CoverElement& b) {
                      if (a.kind != b.kind) return a.kind == ElementKind::Cycle;
                      return a.edge_sequence() < b.edge_sequence();
                  });
        return out;
    }

    std::map<EdgeId, std::size_t> edge_multiplicity() const {
        std::map<EdgeId, std::size_t> mult;
        for (const auto& el : elements)
            for (const auto& s : el.walk.steps) ++mult[s.edge];
        return mult;
    }

    bool contains_cycle(const CoverElement& cycle) const {
        CoverElement want = canonicalize(cycle);
        for (const auto& el : elements)
            if (el.kind == ElementKind::Cycle && canonicalize(el) == want) return true;
        return false;
    }
};

struct Violation {
    std::optional<EdgeId> edge;
    std::optional<std::size_t> element_index;
    std::string reason;
};

struct VerificationReport {
    bool ok = true;
    std::map<EdgeId, std::size_t> per_edge_multiplicity;
    std::vector<Violation> violations;

    void flag(Violation v) {
        ok = false;
        violations.push_back(std::move(v));
    }
};

/// CDC check: every element is a cycle of g and every edge of g has
/// multiplicity exactly 2. Violations are reported, never thrown.
inline VerificationReport verify_cdc(const MultiGraph& g, const Cover& cover) {
    VerificationReport rep;
    for (const auto& [id, ep] : g.edges()) rep.per_edge_multiplicity[id] = 0;
    for (std::size_t i = 0; i < cover.elements.size(); ++i) {
        const CoverElement& el = cover.elements[i];
        if (el.kind != ElementKind::Cycle) {
            rep.flag({std::nullopt, i, "element is not a cycle"});
            continue;
        }
        if (auto why = el.invalid_reason(g)) {
            rep.flag({std::nullopt, i, *why});
            continue;
        }
        for (const auto& s : el.walk.steps) ++rep.per_edge_multiplicity[s.edge];
    }
    for (const auto& [id, count] : rep.per_edge_multiplicity)
        if (count != 2)
            rep.flag({id, std::nullopt,
                      count < 2 ? "edge covered fewer than twice" : "edge covered more than twice"});
    return rep;
}

/// ncdc check: every edge of g ∪ F has multiplicity exactly 2, and every
/// path's two terminal edges are two distinct free edges. |F| = 1 is
/// structurally unsatisfiable and flagged outright.
inline VerificationReport verify_ncdc(const MultiGraph& g, const FreeEdgeSet& f, const Cover& cover) {
    VerificationReport rep;
    if (auto why = f.invalid_reason(g)) {
        rep.flag({std::nullopt, std::nullopt, "invalid free edge set: " + *why});
        return rep;
    }
    if (f.size() == 1)
        rep.flag({f.entries().front().id, std::nullopt,
                  "|F| = 1: a covering path must end at two distinct free edges"});
    MultiGraph u = union_with_free(g, f);
    for (const auto& [id, ep] : u.edges()) rep.per_edge_multiplicity[id] = 0;
    for (std::size_t i = 0; i < cover.elements.size(); ++i) {
        const CoverElement& el = cover.elements[i];
        if (auto why = el.invalid_reason(u)) {
            rep.flag({std::nullopt, i, *why});
            continue;
        }
        if (el.kind == ElementKind::Path) {
            auto [t1, t2] = el.terminal_edges();
            if (!f.contains(t1) || !f.contains(t2)) {
                rep.flag({std::nullopt, i, "path terminal edge is not a free edge"});
                continue;
            }
            if (t1 == t2) {
                rep.flag({std::nullopt, i, "path terminal edges are the same free edge"});
                continue;
            }
            for (std::size_t k = 1; k + 1 < el.walk.steps.size(); ++k)
                if (f.contains(el.walk.steps[k].edge)) {
                    rep.flag({el.walk.steps[k].edge, i, "free edge used as a path interior edge"});
                }
        } else {
            for (const auto& s : el.walk.steps)
                if (f.contains(s.edge)) rep.flag({s.edge, i, "free edge used inside a cycle"});
        }
        for (const auto& s : el.walk.steps) ++rep.per_edge_multiplicity[s.edge];
    }
    for (const auto& [id, count] : rep.per_edge_multiplicity)
        if (count != 2)
            rep.flag({id, std::nullopt,
                      count < 2 ? "edge covered fewer than twice" : "edge covered more than twice"});
    return rep;
}

} // namespace cdc
