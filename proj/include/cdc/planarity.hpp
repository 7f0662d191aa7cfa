#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <stack>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cdc/cover.hpp"
#include "cdc/decompose.hpp"
#include "cdc/graph_ops.hpp"
#include "cdc/multigraph.hpp"
#include "cdc/walk.hpp"
#include "cdc/witness.hpp"

namespace cdc {

/// One end of an edge: side 0 is the stored u endpoint, side 1 the stored
/// v endpoint. A loop owns both sides at its single vertex.
struct Dart {
    EdgeId edge;
    int side = 0;
    auto operator<=>(const Dart&) const = default;
    Dart reversed() const { return {edge, 1 - side}; }
};

inline VertexId dart_tail(const MultiGraph& g, Dart d) {
    const Endpoints& ep = g.endpoints(d.edge);
    return d.side == 0 ? ep.u : ep.v;
}

inline VertexId dart_head(const MultiGraph& g, Dart d) {
    const Endpoints& ep = g.endpoints(d.edge);
    return d.side == 0 ? ep.v : ep.u;
}

/// Combinatorial embedding: per-vertex cyclic order of incident edge ends.
/// Face traversal (next dart = rotation successor of the reversed dart)
/// partitions all 2|E| darts; an embedding is planar exactly when every
/// connectivity component satisfies |V| - |E| + |F| = 2.
struct PlanarEmbedding {
    std::map<VertexId, std::vector<Dart>> rotation;
};

/// Faces of an embedding as closed walks, each dart visited exactly once
/// over all faces. Deterministic: traversal starts from unvisited darts in
/// ascending order.
inline std::vector<Walk> faces(const MultiGraph& g, const PlanarEmbedding& emb) {
    std::map<Dart, Dart> next; // face successor
    for (const auto& [v, rot] : emb.rotation) {
        if (!g.has_vertex(v)) throw std::invalid_argument("faces: embedding names unknown vertex");
        for (std::size_t i = 0; i < rot.size(); ++i) {
            Dart d = rot[i];
            if (!g.has_edge(d.edge)) throw std::invalid_argument("faces: embedding names unknown edge");
            if (dart_tail(g, d) != v) throw std::invalid_argument("faces: dart listed at wrong vertex");
            Dart succ = rot[(i + 1) % rot.size()];
            if (!next.emplace(d, succ).second)
                throw std::invalid_argument("faces: dart appears twice in rotations");
        }
    }
    if (next.size() != 2 * g.edge_count())
        throw std::invalid_argument("faces: rotations do not cover all edge ends");

    std::vector<Walk> out;
    std::set<Dart> visited;
    for (const auto& [d0, succ0] : next) {
        if (visited.count(d0)) continue;
        Walk face;
        face.start = dart_tail(g, d0);
        Dart d = d0;
        do {
            visited.insert(d);
            face.append(d.edge, dart_head(g, d));
            d = next.at(d.reversed());
        } while (!(d == d0));
        out.push_back(std::move(face));
    }
    return out;
}

/// Validates an embedding: dart coverage plus the per-component Euler
/// formula (edgeless components count one face).
inline std::optional<std::string> embedding_invalid_reason(const MultiGraph& g,
                                                           const PlanarEmbedding& emb) {
    std::vector<Walk> fs;
    try {
        fs = faces(g, emb);
    } catch (const std::invalid_argument& e) {
        return std::string(e.what());
    }
    auto comps = connectivity_components(g);
    std::map<VertexId, std::size_t> comp_of;
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (VertexId v : comps[i]) comp_of[v] = i;
    std::vector<std::size_t> v_count(comps.size(), 0), e_count(comps.size(), 0), f_count(comps.size(), 0);
    for (std::size_t i = 0; i < comps.size(); ++i) v_count[i] = comps[i].size();
    for (const auto& [id, ep] : g.edges()) ++e_count[comp_of.at(ep.u)];
    for (const Walk& f : fs) ++f_count[comp_of.at(f.start)];
    for (std::size_t i = 0; i < comps.size(); ++i) {
        std::size_t fc = e_count[i] == 0 ? 1 : f_count[i];
        if (v_count[i] + fc != e_count[i] + 2) return "Euler check failed on a component";
    }
    return std::nullopt;
}

/// Biconnected blocks of a multigraph as an edge partition. Loops form
/// their own single-edge blocks; a bridge is a block; parallel classes stay
/// together. Ordered by minimum edge id.
inline std::vector<std::set<EdgeId>> blocks(const MultiGraph& g) {
    std::vector<std::set<EdgeId>> out;
    std::map<VertexId, std::vector<std::pair<EdgeId, VertexId>>> adj;
    for (VertexId v : g.vertices()) adj[v];
    for (const auto& [id, ep] : g.edges()) {
        if (ep.is_loop()) {
            out.push_back({id});
            continue;
        }
        adj[ep.u].emplace_back(id, ep.v);
        adj[ep.v].emplace_back(id, ep.u);
    }
    for (auto& [v, lst] : adj) std::sort(lst.begin(), lst.end());

    std::map<VertexId, int> tin, low;
    int timer = 0;
    std::vector<EdgeId> estk;
    struct Frame {
        VertexId v;
        EdgeId via;
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
                if (fr.has_via && e == fr.via) continue;
                if (!tin.count(to)) {
                    estk.push_back(e);
                    tin[to] = low[to] = timer++;
                    st.push({to, e, true});
                } else if (tin[to] < tin[fr.v]) {
                    estk.push_back(e);
                    low[fr.v] = std::min(low[fr.v], tin[to]);
                }
            } else {
                Frame done = fr;
                st.pop();
                if (!done.has_via) continue;
                Frame& parent = st.top();
                low[parent.v] = std::min(low[parent.v], low[done.v]);
                if (low[done.v] >= tin[parent.v]) {
                    std::set<EdgeId> block;
                    while (!estk.empty()) {
                        EdgeId e = estk.back();
                        estk.pop_back();
                        block.insert(e);
                        if (e == done.via) break;
                    }
                    out.push_back(std::move(block));
                }
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return *a.begin() < *b.begin(); });
    return out;
}

namespace detail {

/// Demoucron-Malgrange-Pertuiset planar embedding of a simple 2-connected
/// graph with >= 3 vertices, or of a plain cycle. Returns the face set as
/// oriented vertex cycles (every directed edge appears exactly once over
/// all faces), or nullopt when the graph is not planar.
inline std::optional<std::vector<std::vector<VertexId>>> dmp_faces(const MultiGraph& g) {
    std::map<VertexId, std::vector<VertexId>> adj;
    for (VertexId v : g.vertices()) adj[v];
    for (const auto& [id, ep] : g.edges()) {
        adj[ep.u].push_back(ep.v);
        adj[ep.v].push_back(ep.u);
    }
    for (auto& [v, lst] : adj) std::sort(lst.begin(), lst.end());

    // initial cycle: first back edge of a depth-first search
    std::vector<VertexId> cycle;
    {
        std::map<VertexId, VertexId> parent;
        std::set<VertexId> on_path;
        struct Frame {
            VertexId v;
            std::size_t next = 0;
        };
        VertexId root = *g.vertices().begin();
        std::stack<Frame> st;
        st.push({root});
        on_path.insert(root);
        std::set<VertexId> seen{root};
        std::optional<std::pair<VertexId, VertexId>> back;
        while (!st.empty() && !back) {
            Frame& fr = st.top();
            if (fr.next < adj[fr.v].size()) {
                VertexId w = adj[fr.v][fr.next++];
                if (parent.count(fr.v) && parent[fr.v] == w) continue;
                if (!seen.count(w)) {
                    seen.insert(w);
                    parent[w] = fr.v;
                    on_path.insert(w);
                    st.push({w});
                } else if (on_path.count(w)) {
                    back = {fr.v, w};
                }
            } else {
                on_path.erase(fr.v);
                st.pop();
            }
        }
        if (!back) return std::nullopt; // acyclic input; the caller's blocks prevent this
        for (VertexId a = back->first;; a = parent[a]) {
            cycle.push_back(a);
            if (a == back->second) break;
        }
        std::reverse(cycle.begin(), cycle.end());
    }

    std::set<VertexId> hv(cycle.begin(), cycle.end());
    std::set<std::pair<VertexId, VertexId>> he; // embedded edges, keyed unordered
    auto ekey = [](VertexId a, VertexId b) { return a <= b ? std::pair{a, b} : std::pair{b, a}; };
    for (std::size_t i = 0; i < cycle.size(); ++i)
        he.insert(ekey(cycle[i], cycle[(i + 1) % cycle.size()]));
    std::vector<std::vector<VertexId>> face_list;
    face_list.push_back(cycle);
    std::vector<VertexId> rev = cycle;
    std::reverse(rev.begin(), rev.end());
    face_list.push_back(rev);

    std::size_t total_edges = g.edge_count();
    while (he.size() < total_edges) {
        // fragments: chords first (sorted), then components of G - V(H)
        struct Fragment {
            std::vector<VertexId> attachments;            // sorted
            std::optional<std::pair<VertexId, VertexId>> chord;
            std::set<VertexId> interior;
        };
        std::vector<Fragment> fragments;
        for (const auto& [id, ep] : g.edges()) {
            if (he.count(ekey(ep.u, ep.v))) continue;
            if (hv.count(ep.u) && hv.count(ep.v)) {
                Fragment fr;
                fr.chord = ekey(ep.u, ep.v);
                fr.attachments = {fr.chord->first, fr.chord->second};
                fragments.push_back(std::move(fr));
            }
        }
        std::set<VertexId> outside;
        for (VertexId v : g.vertices())
            if (!hv.count(v)) outside.insert(v);
        std::set<VertexId> assigned;
        for (VertexId root : outside) {
            if (assigned.count(root)) continue;
            Fragment fr;
            std::stack<VertexId> st;
            st.push(root);
            assigned.insert(root);
            std::set<VertexId> att;
            while (!st.empty()) {
                VertexId v = st.top();
                st.pop();
                fr.interior.insert(v);
                for (VertexId w : adj[v]) {
                    if (hv.count(w)) att.insert(w);
                    else if (assigned.insert(w).second) st.push(w);
                }
            }
            fr.attachments.assign(att.begin(), att.end());
            fragments.push_back(std::move(fr));
        }
        if (fragments.empty()) throw std::logic_error("dmp: no fragments but edges missing");

        // admissible faces per fragment
        std::vector<std::vector<std::size_t>> admissible(fragments.size());
        for (std::size_t fi = 0; fi < fragments.size(); ++fi) {
            for (std::size_t f = 0; f < face_list.size(); ++f) {
                std::set<VertexId> fv(face_list[f].begin(), face_list[f].end());
                bool all = std::all_of(fragments[fi].attachments.begin(), fragments[fi].attachments.end(),
                                       [&](VertexId a) { return fv.count(a) != 0; });
                if (all) admissible[fi].push_back(f);
            }
            if (admissible[fi].empty()) return std::nullopt; // fragment cannot be embedded
        }
        std::size_t chosen = 0;
        for (std::size_t fi = 0; fi < fragments.size(); ++fi)
            if (admissible[fi].size() == 1) {
                chosen = fi;
                break;
            }
        const Fragment& fr = fragments[chosen];
        std::size_t face_idx = admissible[chosen].front();

        // alpha-path between two attachments through the fragment
        std::vector<VertexId> path;
        if (fr.chord) {
            path = {fr.chord->first, fr.chord->second};
        } else {
            VertexId a = fr.attachments.front();
            std::map<VertexId, VertexId> parent;
            std::queue<VertexId> q;
            std::set<VertexId> seen{a};
            std::optional<VertexId> reached;
            q.push(a);
            while (!q.empty() && !reached) {
                VertexId v = q.front();
                q.pop();
                for (VertexId w : adj[v]) {
                    if (seen.count(w)) continue;
                    if (v == a && !fr.interior.count(w)) continue; // leave H only into the fragment
                    if (fr.interior.count(w)) {
                        seen.insert(w);
                        parent[w] = v;
                        q.push(w);
                    } else if (hv.count(w) && w != a) {
                        parent[w] = v;
                        reached = w;
                        break;
                    }
                }
            }
            if (!reached) throw std::logic_error("dmp: fragment path not found");
            for (VertexId v = *reached;; v = parent[v]) {
                path.push_back(v);
                if (v == a) break;
            }
            std::reverse(path.begin(), path.end());
        }

        // split the chosen face along the path
        std::vector<VertexId> face = face_list[face_idx];
        auto pos_of = [&](VertexId v) {
            return static_cast<std::size_t>(
                std::find(face.begin(), face.end(), v) - face.begin());
        };
        std::size_t i = pos_of(path.front()), j = pos_of(path.back());
        std::size_t m = face.size();
        std::vector<VertexId> face1, face2;
        for (std::size_t t = i;; t = (t + 1) % m) {
            face1.push_back(face[t]);
            if (t == j) break;
        }
        for (std::size_t t = path.size() - 1; t >= 1; --t) face1.push_back(path[t - 1]);
        face1.pop_back(); // drop duplicated path.front() == face[i]
        for (std::size_t t = 0; t + 1 < path.size(); ++t) face2.push_back(path[t]);
        for (std::size_t t = j;; t = (t + 1) % m) {
            face2.push_back(face[t]);
            if (t == (i + m - 1) % m) break;
        }
        face_list[face_idx] = std::move(face1);
        face_list.push_back(std::move(face2));

        for (std::size_t t = 0; t + 1 < path.size(); ++t) he.insert(ekey(path[t], path[t + 1]));
        for (VertexId v : path) hv.insert(v);
    }
    return face_list;
}

/// Rotation system of a simple graph from an oriented face set: for
/// consecutive face darts x->v, v->y the rotation successor of (v->x) is
/// (v->y).
inline std::map<VertexId, std::vector<VertexId>> rotations_from_faces(
    const std::vector<std::vector<VertexId>>& face_list) {
    std::map<std::pair<VertexId, VertexId>, std::pair<VertexId, VertexId>> succ;
    for (const auto& face : face_list) {
        std::size_t m = face.size();
        for (std::size_t t = 0; t < m; ++t) {
            VertexId x = face[t], v = face[(t + 1) % m], y = face[(t + 2) % m];
            if (!succ.emplace(std::pair{v, x}, std::pair{v, y}).second)
                throw std::logic_error("rotations_from_faces: inconsistent face set");
        }
    }
    std::map<VertexId, std::vector<VertexId>> rot;
    std::set<std::pair<VertexId, VertexId>> done;
    for (const auto& [d, nxt] : succ) {
        if (done.count(d)) continue;
        VertexId v = d.first;
        std::pair<VertexId, VertexId> cur = d;
        do {
            rot[v].push_back(cur.second);
            done.insert(cur);
            cur = succ.at(cur);
        } while (!(cur == d));
    }
    return rot;
}

} // namespace detail

/// Embeds a simple multigraph-free graph, block by block; blocks meeting at
/// a cut vertex have their rotations concatenated. Returns nullopt when
/// some block is non-planar.
inline std::optional<PlanarEmbedding> embed_simple(const MultiGraph& g) {
    if (!g.is_simple()) throw std::invalid_argument("embed_simple: graph must be simple");
    PlanarEmbedding emb;
    for (VertexId v : g.vertices()) emb.rotation[v];
    std::map<std::pair<VertexId, VertexId>, EdgeId> lookup;
    for (const auto& [id, ep] : g.edges()) lookup[ep.key()] = id;
    auto dart_for = [&](VertexId from, VertexId to) {
        EdgeId e = lookup.at(from <= to ? std::pair{from, to} : std::pair{to, from});
        const Endpoints& ep = g.endpoints(e);
        return Dart{e, ep.u == from ? 0 : 1};
    };
    for (const std::set<EdgeId>& blk : blocks(g)) {
        if (blk.size() == 1) {
            EdgeId e = *blk.begin();
            const Endpoints& ep = g.endpoints(e);
            emb.rotation[ep.u].push_back(Dart{e, 0});
            emb.rotation[ep.v].push_back(Dart{e, 1});
            continue;
        }
        MultiGraph sub = induced_by_edges(g, blk);
        auto face_list = detail::dmp_faces(sub);
        if (!face_list) return std::nullopt;
        for (const auto& [v, nbrs] : detail::rotations_from_faces(*face_list))
            for (VertexId w : nbrs) emb.rotation[v].push_back(dart_for(v, w));
    }
    return emb;
}

/// Lifts an embedding of underlying_simple(g) back to g: each parallel
/// edge is inserted next to its class representative (forming a bigon
/// face), each loop as an adjacent dart pair (forming a 1-gon face).
inline PlanarEmbedding lift_embedding(const MultiGraph& g, const SimpleResult& simple,
                                      const PlanarEmbedding& emb_simple) {
    PlanarEmbedding emb = emb_simple;
    for (VertexId v : g.vertices()) emb.rotation[v];
    for (const auto& [rep, cls] : simple.provenance.parallel_classes) {
        const Endpoints& ep = g.endpoints(rep);
        auto insert_at = [&](VertexId at, EdgeId prev, EdgeId next_edge, bool after) {
            auto& rot = emb.rotation[at];
            auto it = std::find_if(rot.begin(), rot.end(),
                                   [&](Dart d) { return d.edge == prev; });
            if (it == rot.end()) throw std::logic_error("lift_embedding: representative dart missing");
            const Endpoints& nep = g.endpoints(next_edge);
            Dart nd{next_edge, nep.u == at ? 0 : 1};
            rot.insert(after ? it + 1 : it, nd);
        };
        for (std::size_t i = 1; i < cls.size(); ++i) {
            insert_at(ep.v, cls[i - 1], cls[i], true);
            insert_at(ep.u, cls[i - 1], cls[i], false);
        }
    }
    for (const auto& [loop, at] : simple.provenance.loops) {
        auto& rot = emb.rotation[at];
        rot.push_back(Dart{loop, 0});
        rot.push_back(Dart{loop, 1});
    }
    return emb;
}

/// Embeds any multigraph (or reports non-planarity) via the simple
/// reduction; the result is validated against the Euler formula.
inline std::optional<PlanarEmbedding> embed_multigraph(const MultiGraph& g) {
    SimpleResult simple = underlying_simple(g);
    auto emb_simple = embed_simple(simple.graph);
    if (!emb_simple) return std::nullopt;
    PlanarEmbedding emb = lift_embedding(g, simple, *emb_simple);
    if (auto why = embedding_invalid_reason(g, emb))
        throw std::logic_error("embed_multigraph: built an invalid embedding: " + *why);
    return emb;
}

/// Deterministic edge order used for witness extraction: the canonical
/// vertex order is permuted by the seed (seed 0 keeps ascending ids) and
/// edges sort by their permuted endpoint ranks.
inline std::vector<EdgeId> witness_search_order(const MultiGraph& g, std::uint64_t seed) {
    std::vector<VertexId> verts(g.vertices().begin(), g.vertices().end());
    if (seed != 0) {
        std::mt19937_64 rng(seed);
        std::shuffle(verts.begin(), verts.end(), rng);
    }
    std::map<VertexId, std::size_t> rank;
    for (std::size_t i = 0; i < verts.size(); ++i) rank[verts[i]] = i;
    std::vector<EdgeId> order;
    for (const auto& [id, ep] : g.edges()) order.push_back(id);
    std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
        const Endpoints& pa = g.endpoints(a);
        const Endpoints& pb = g.endpoints(b);
        auto ka = std::minmax(rank.at(pa.u), rank.at(pa.v));
        auto kb = std::minmax(rank.at(pb.u), rank.at(pb.v));
        if (ka != kb) return ka < kb;
        return a < b;
    });
    return order;
}

/// Shrinks a non-planar simple graph to an edge-minimal non-planar
/// subgraph (one monotone pass: an edge whose deletion keeps the graph
/// non-planar is deleted) and recognizes the remainder, which is then
/// exactly a Kuratowski subdivision.
inline KuratowskiWitness extract_kuratowski(const MultiGraph& g, std::uint64_t seed) {
    MultiGraph h = g;
    for (EdgeId e : witness_search_order(g, seed)) {
        MultiGraph candidate = h;
        candidate.remove_edge(e);
        if (!embed_simple(underlying_simple(candidate).graph)) h = std::move(candidate);
    }
    std::vector<VertexId> isolated;
    for (VertexId v : h.vertices())
        if (h.degree(v) == 0) isolated.push_back(v);
    for (VertexId v : isolated) h.remove_vertex(v);
    auto wit = recognize_kuratowski(h);
    if (!wit) throw std::logic_error("extract_kuratowski: minimal graph is not a Kuratowski subdivision");
    return *wit;
}

/// Certifying planarity test: exactly one of an embedding (validated by
/// the Euler check) or a Kuratowski witness (validated as a subdivision).
/// Deterministic for a fixed seed; the default seed keeps canonical order.
struct PlanarityResult {
    std::optional<PlanarEmbedding> embedding;
    std::optional<KuratowskiWitness> witness;
    bool planar() const { return embedding.has_value(); }
};

inline PlanarityResult test_planarity(const MultiGraph& g, std::uint64_t seed = 0) {
    SimpleResult simple = underlying_simple(g);
    std::vector<KuratowskiWitness> candidates;
    for (const std::set<EdgeId>& blk : blocks(simple.graph)) {
        if (blk.size() < 9) continue; // a K-subdivision needs >= 9 edges
        MultiGraph sub = induced_by_edges(simple.graph, blk);
        if (!detail::dmp_faces(sub)) candidates.push_back(extract_kuratowski(sub, seed));
    }
    if (candidates.empty()) {
        auto emb = embed_multigraph(g);
        if (!emb) throw std::logic_error("test_planarity: no witness but embedding failed");
        return {std::move(emb), std::nullopt};
    }
    // Among producible witnesses pick the minimum by (|V|, lexicographic
    // sorted vertex-id string).
    auto key = [](const KuratowskiWitness& w) {
        std::set<VertexId> vs = w.vertex_set();
        return std::pair{vs.size(), std::vector<VertexId>(vs.begin(), vs.end())};
    };
    auto best = std::min_element(candidates.begin(), candidates.end(),
                                 [&](const auto& a, const auto& b) { return key(a) < key(b); });
    if (auto why = best->invalid_reason(g))
        throw std::logic_error("test_planarity: invalid witness: " + *why);
    return {std::nullopt, std::move(*best)};
}

/// Face-cycle double cover of a bridgeless planar multigraph, built block
/// by block: every face boundary of a nonseparable block is a cycle, and
/// the blocks partition the edge set.
inline Cover planar_cdc(const MultiGraph& g) {
    std::set<EdgeId> br = bridges(g);
    if (!br.empty()) {
        std::string msg = "planar_cdc: graph has bridges:";
        for (EdgeId b : br) msg += " e" + std::to_string(b.value);
        throw std::invalid_argument(msg);
    }
    Cover out;
    for (const std::set<EdgeId>& blk : blocks(g)) {
        MultiGraph sub = induced_by_edges(g, blk);
        auto emb = embed_multigraph(sub);
        if (!emb) throw std::invalid_argument("planar_cdc: graph is not planar");
        for (Walk& f : faces(sub, *emb)) {
            CoverElement el{ElementKind::Cycle, std::move(f)};
            if (auto why = el.invalid_reason(sub))
                throw std::logic_error("planar_cdc: face is not a cycle: " + *why);
            out.add(std::move(el));
        }
    }
    return out;
}

} // namespace cdc
