#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "cdc/cover.hpp"
#include "cdc/especial.hpp"
#include "cdc/free_edge_set.hpp"
#include "cdc/graph_ops.hpp"
#include "cdc/multigraph.hpp"

namespace cdc {

/// Provenance of one cut-off edge: the original edge joining inner_f to
/// inner_fp was replaced by pendants f (at inner_f) and f_prime.
struct CutPendants {
    EdgeId original;
    VertexId inner_f;
    VertexId inner_fp;
    EdgeId f;
    EdgeId f_prime;
};

inline CutPendants make_cut_pendants(EdgeId original, const CutOffResult& res) {
    return {original, res.f.inner, res.f_prime.inner, res.f.id, res.f_prime.id};
}

namespace detail {

/// One joining instruction: elements ending with terminal edge tag_a whose
/// last interior vertex is inner_a get glued, across `bridge`, to elements
/// ending with tag_b at inner_b. The inner vertices disambiguate the two
/// sides even when tag_a == tag_b (vertex-disjoint merge).
struct PastePoint {
    EdgeId tag_a;
    VertexId inner_a;
    EdgeId tag_b;
    VertexId inner_b;
    EdgeId bridge;
};

struct Slot {
    std::size_t index;
    bool at_front;
};

/// Strand pool: open walks still carrying pendant terminals plus finished
/// cycles. Pasting repeatedly joins strands; every closed result is peeled
/// into genuine cycles.
class PasteEngine {
public:
    explicit PasteEngine(const Cover& input) {
        for (const auto& el : input.elements) {
            if (el.kind == ElementKind::Cycle) closed_.push_back(el.walk);
            else strands_.push_back(el.walk);
        }
    }

    void paste(const PastePoint& p) {
        for (int round = 0; round < 2; ++round) {
            auto sa = find_slot(p.tag_a, p.inner_a);
            if (!sa) throw std::invalid_argument("paste: pendant not covered exactly twice");
            // Prefer the suitable partner: joining must not leave an open
            // strand whose two terminals are the same free edge (such a
            // strand could never verify). With exactly two ends per tag a
            // conflict-free partner exists whenever any pairing avoids it.
            auto sb = find_slot(p.tag_b, p.inner_b, sa);
            if (!sb) throw std::invalid_argument("paste: pendant not covered exactly twice");
            if (sa->index != sb->index && other_end_tag(*sa) == other_end_tag(*sb)) {
                auto alt = find_slot(p.tag_b, p.inner_b, sa, sb);
                if (alt && (alt->index == sa->index || other_end_tag(*sa) != other_end_tag(*alt)))
                    sb = alt;
            }
            join(*sa, *sb, p);
        }
        if (find_slot(p.tag_a, p.inner_a) || find_slot(p.tag_b, p.inner_b))
            throw std::invalid_argument("paste: pendant covered more than twice");
    }

    /// Remaining strands become paths; closed walks are peeled into cycles.
    Cover finish() const {
        Cover out;
        for (const Walk& w : strands_) {
            PeelResult pr = peel_walk(w, false);
            for (const Walk& c : pr.cycles) out.add({ElementKind::Cycle, c});
            out.add({ElementKind::Path, pr.residual});
        }
        for (const Walk& w : closed_)
            for (const Walk& c : peel_closed_walk(w)) out.add({ElementKind::Cycle, c});
        return out;
    }

private:
    std::optional<Slot> find_slot(EdgeId tag, VertexId inner,
                                  std::optional<Slot> skip1 = std::nullopt,
                                  std::optional<Slot> skip2 = std::nullopt) const {
        auto skipped = [&](std::size_t i, bool front) {
            return (skip1 && skip1->index == i && skip1->at_front == front) ||
                   (skip2 && skip2->index == i && skip2->at_front == front);
        };
        for (std::size_t i = 0; i < strands_.size(); ++i) {
            const Walk& w = strands_[i];
            if (w.steps.empty()) continue;
            std::vector<VertexId> verts = w.vertex_sequence();
            bool front_hit = w.steps.front().edge == tag && verts[1] == inner;
            bool back_hit = w.steps.back().edge == tag && verts[verts.size() - 2] == inner;
            if (front_hit && !skipped(i, true)) return Slot{i, true};
            if (back_hit && !skipped(i, false)) return Slot{i, false};
        }
        return std::nullopt;
    }

    EdgeId other_end_tag(Slot s) const {
        const Walk& w = strands_[s.index];
        return s.at_front ? w.steps.back().edge : w.steps.front().edge;
    }

    void join(Slot a, Slot b, const PastePoint& p) {
        if (a.index == b.index) {
            // self-paste closes the strand: drop both terminal steps and
            // bridge the interior ends
            Walk w = strands_[a.index];
            Walk oriented = a.at_front ? w.reversed() : w; // tag_a at the back
            Walk closed;
            std::vector<VertexId> verts = oriented.vertex_sequence();
            closed.start = verts[1]; // past the leading terminal step
            for (std::size_t i = 1; i + 1 < oriented.steps.size(); ++i)
                closed.steps.push_back(oriented.steps[i]);
            closed.append(p.bridge, closed.start);
            // bridge runs inner_a -> inner_b; after orientation the strand
            // ends at inner_a and starts (past its terminal) at inner_b
            strands_.erase(strands_.begin() + static_cast<std::ptrdiff_t>(a.index));
            closed_.push_back(std::move(closed));
            return;
        }
        Walk left = strands_[a.index];
        if (a.at_front) left = left.reversed(); // tag_a at the back
        Walk right = strands_[b.index];
        if (!b.at_front) right = right.reversed(); // tag_b at the front
        Walk joined;
        joined.start = left.start;
        for (std::size_t i = 0; i + 1 < left.steps.size(); ++i) joined.steps.push_back(left.steps[i]);
        joined.append(p.bridge, p.inner_b);
        for (std::size_t i = 1; i < right.steps.size(); ++i) joined.steps.push_back(right.steps[i]);
        std::size_t lo = std::min(a.index, b.index), hi = std::max(a.index, b.index);
        strands_.erase(strands_.begin() + static_cast<std::ptrdiff_t>(hi));
        strands_[lo] = std::move(joined);
    }

    std::vector<Walk> strands_;
    std::vector<Walk> closed_;
};

} // namespace detail

/// Lemma 3.4 splice: a cover of (G \ e; {f, f'} ∪ F) becomes a cover of
/// (G; F) by pasting the paths ending at f to the paths ending at f'
/// across the restored edge e. Pairing is by ascending element position.
inline Cover splice_cut_edge(const Cover& cover, const CutPendants& cut) {
    detail::PasteEngine engine(cover);
    engine.paste({cut.f, cut.inner_f, cut.f_prime, cut.inner_fp, cut.original});
    return engine.finish();
}

/// Prop 3.5 combination: covers of the two sides of a vertex partition,
/// each side carrying the cut-off pendants of the crossing edges, are
/// spliced across every crossing edge.
inline Cover combine_partition(const Cover& cover_x, const Cover& cover_y,
                               const std::vector<CutPendants>& cuts) {
    Cover pool;
    pool.add_all(cover_x);
    pool.add_all(cover_y);
    detail::PasteEngine engine(pool);
    std::vector<CutPendants> ordered = cuts;
    std::sort(ordered.begin(), ordered.end(),
              [](const CutPendants& a, const CutPendants& b) { return a.original < b.original; });
    for (const CutPendants& c : ordered)
        engine.paste({c.f, c.inner_f, c.f_prime, c.inner_fp, c.original});
    return engine.finish();
}

/// Lemma 3.3 merge: two vertex-disjoint graphs covered against free edge
/// sets that share edge ids (each free edge's outer role on one side is
/// filled by the other side's inner vertex). The shared free edge becomes
/// a real edge inner_G(f) - inner_H(f); the two covers' path ends at f are
/// pasted pairwise. The result covers G ∪ F ∪ H with no free edges.
inline Cover merge_disjoint(const Cover& cover_g, const FreeEdgeSet& f_g, const Cover& cover_h,
                            const FreeEdgeSet& f_h) {
    if (f_g.size() != f_h.size()) throw std::invalid_argument("merge_disjoint: free sets differ");
    Cover pool;
    pool.add_all(cover_g);
    pool.add_all(cover_h);
    detail::PasteEngine engine(pool);
    for (const FreeEdge& fg : f_g.entries()) {
        if (!f_h.contains(fg.id)) throw std::invalid_argument("merge_disjoint: free sets differ");
        const FreeEdge& fh = f_h.at(fg.id);
        if (fg.inner == fh.inner) throw std::invalid_argument("merge_disjoint: graphs not vertex-disjoint");
        engine.paste({fg.id, fg.inner, fh.id, fh.inner, fg.id});
    }
    return engine.finish();
}

/// Prop 3.2 lift: a cover of underlying_simple(g) becomes a cover of g.
/// Parallel classes re-expand by rerouting one traversal of the
/// representative to the last class member and adding the chain of bigons;
/// loops come back as 1-gon cycles used twice.
inline Cover lift_multigraph(const MultiGraph& g, const SimpleProvenance& prov, const Cover& cover) {
    Cover out = cover;
    for (const auto& [rep, cls] : prov.parallel_classes) {
        Endpoints ep = g.endpoints(rep);
        std::vector<std::pair<std::size_t, std::size_t>> traversals; // (element, step)
        for (std::size_t i = 0; i < out.elements.size(); ++i)
            for (std::size_t s = 0; s < out.elements[i].walk.steps.size(); ++s)
                if (out.elements[i].walk.steps[s].edge == rep) traversals.emplace_back(i, s);
        if (traversals.size() != 2)
            throw std::invalid_argument("lift_multigraph: representative not covered exactly twice");
        auto [ei, si] = traversals[1];
        out.elements[ei].walk.steps[si].edge = cls.back();
        for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
            Walk bigon;
            bigon.start = ep.u;
            bigon.append(cls[i], ep.v);
            bigon.append(cls[i + 1], ep.u);
            out.add({ElementKind::Cycle, bigon});
        }
    }
    for (const auto& [loop, at] : prov.loops) {
        Walk one;
        one.start = at;
        one.append(loop, at);
        out.add({ElementKind::Cycle, one});
        out.add({ElementKind::Cycle, one});
    }
    return out;
}

/// Inverse of edge subdivision on covers: the two halves of each
/// subdivided edge are traversed consecutively through the degree-2
/// midpoint and merge back into the original edge.
inline Cover suppress_subdivision(const Cover& cover, const SubdivisionProvenance& prov) {
    std::map<VertexId, SubdivisionRecord> by_mid;
    for (const auto& [orig, rec] : prov.records) by_mid.emplace(rec.mid, rec);
    Cover out;
    for (const CoverElement& el : cover.elements) {
        Walk w = el.walk;
        if (by_mid.count(w.start)) {
            if (!w.closed())
                throw std::invalid_argument("suppress_subdivision: open element ends at a midpoint");
            // rotate the cycle so it does not start mid-edge
            Walk rotated;
            rotated.start = w.steps.front().to;
            for (std::size_t i = 1; i < w.steps.size(); ++i) rotated.steps.push_back(w.steps[i]);
            rotated.steps.push_back(w.steps.front());
            w = std::move(rotated);
            if (by_mid.count(w.start))
                throw std::invalid_argument("suppress_subdivision: consecutive midpoints");
        }
        Walk merged;
        merged.start = w.start;
        for (std::size_t i = 0; i < w.steps.size(); ++i) {
            auto it = by_mid.find(w.steps[i].to);
            if (it == by_mid.end()) {
                merged.steps.push_back(w.steps[i]);
                continue;
            }
            const SubdivisionRecord& rec = it->second;
            if (i + 1 >= w.steps.size())
                throw std::invalid_argument("suppress_subdivision: element ends at a midpoint");
            EdgeId first = w.steps[i].edge, second = w.steps[i + 1].edge;
            bool pair_ok = (first == rec.half1 && second == rec.half2) ||
                           (first == rec.half2 && second == rec.half1);
            if (!pair_ok) throw std::invalid_argument("suppress_subdivision: halves not consecutive");
            merged.append(rec.original, w.steps[i + 1].to);
            ++i;
        }
        out.add({el.kind, std::move(merged)});
    }
    return out;
}

} // namespace cdc
