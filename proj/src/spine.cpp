#include "fsr/spine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace fsr {

int TrainTrack::gate_of(int vertex, int edge, int end) const {
    const auto& gs = vertices[vertex].gates;
    for (size_t g = 0; g < gs.size(); ++g)
        for (auto [e, k] : gs[g])
            if (e == edge && k == end) return static_cast<int>(g);
    throw std::logic_error("edge end not found at vertex");
}

namespace {

// a chord endpoint: a designated point of a level-n edge approached from
// one of its two slot sides
struct Endpoint {
    int edge, slot;
    bool operator<(const Endpoint& o) const {
        return std::tie(edge, slot) < std::tie(o.edge, o.slot);
    }
    bool operator==(const Endpoint& o) const { return edge == o.edge && slot == o.slot; }
};

struct Chord {
    Endpoint a, b;  // a < b
    std::set<int> subtiles;  // level-n tiles whose subbands induced it
    bool operator<(const Chord& o) const { return std::tie(a, b) < std::tie(o.a, o.b); }
};

// cyclic boundary position of an endpoint in the polygon of its level-0 tile
struct PolyPos {
    int side;
    int index;
    bool operator<(const PolyPos& o) const {
        return std::tie(side, index) < std::tie(o.side, o.index);
    }
    bool operator==(const PolyPos& o) const { return side == o.side && index == o.index; }
};

bool interleave(const PolyPos& a1, const PolyPos& a2, const PolyPos& b1, const PolyPos& b2) {
    // strict interleaving of {a1,a2} and {b1,b2} on the circle
    auto between = [](const PolyPos& lo, const PolyPos& hi, const PolyPos& x) {
        // x in the open ccw arc (lo, hi)
        if (lo < hi) return lo < x && x < hi;
        return lo < x || x < hi;
    };
    if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) return false;
    return between(a1, a2, b1) != between(a1, a2, b2);
}

}  // namespace

TrainTrack build_spine(const CompiledSpec& cs, const LeveledComplex& lc,
                       const Digraph& band_graph) {
    TrainTrack tt;
    tt.level = lc.level;
    auto subbands = recurrent_subbands(cs, lc, band_graph);

    // regroup per level-0 tile, dedup chords by endpoint pairs
    std::map<int, std::map<std::pair<Endpoint, Endpoint>, Chord>> per_tile;
    auto slot_of = [&](int edge, int tile, int m) {
        const auto& slots = lc.edges[edge].slots;
        for (size_t s = 0; s < slots.size(); ++s)
            if (slots[s].first == tile && slots[s].second == m) return static_cast<int>(s);
        throw std::logic_error("band side slot not found");
    };
    for (const auto& [band, list] : subbands) {
        for (const Subband& sb : list) {
            Endpoint p{sb.edge1, slot_of(sb.edge1, sb.tile, sb.m1)};
            Endpoint q{sb.edge2, slot_of(sb.edge2, sb.tile, sb.m2)};
            if (q < p) std::swap(p, q);
            Chord& c = per_tile[band.tile][{p, q}];
            c.a = p;
            c.b = q;
            c.subtiles.insert(sb.tile);
        }
    }

    // polygon boundary position of an endpoint within level-0 tile t
    auto poly_pos = [&](int t0, const Endpoint& ep) -> PolyPos {
        auto [tile, m] = lc.edges[ep.edge].slots[ep.slot];
        int side = lc.tiles[tile].side_anchor[m];
        if (side < 0) throw std::logic_error("endpoint not on the level-0 boundary");
        Dir eps = cs.spec.tile_types[t0].boundary[side].dir;
        int e0 = lc.edges[ep.edge].p0_edge;
        int len = static_cast<int>(lc.edge_expansion[e0].size());
        int pos = lc.pos_on_p0[ep.edge];
        return {side, eps > 0 ? pos : len - 1 - pos};
    };

    // track vertices per designated point (level-n edge), created on demand
    std::map<int, int> point_vertex;
    auto get_point_vertex = [&](int edge) {
        auto it = point_vertex.find(edge);
        if (it != point_vertex.end()) return it->second;
        TrainTrack::Vertex v;
        v.kind = TrainTrack::VKind::BoundaryPoint;
        v.anchor_edge = edge;
        tt.vertices.push_back(v);
        point_vertex[edge] = static_cast<int>(tt.vertices.size() - 1);
        return point_vertex[edge];
    };

    // per (edge, slot): the edge-ends that arrive there from inside the tile
    std::map<Endpoint, std::vector<std::pair<int, int>>> arrivals;

    for (auto& [t0, chords_map] : per_tile) {
        std::vector<Chord> chords;
        for (auto& [k, c] : chords_map) chords.push_back(c);
        int nc = static_cast<int>(chords.size());

        // crossing graph
        std::vector<std::vector<int>> cross(nc);
        for (int i = 0; i < nc; ++i)
            for (int j = i + 1; j < nc; ++j) {
                if (interleave(poly_pos(t0, chords[i].a), poly_pos(t0, chords[i].b),
                               poly_pos(t0, chords[j].a), poly_pos(t0, chords[j].b))) {
                    // crossing bones live in a common level-n subtile
                    std::vector<int> common;
                    std::set_intersection(chords[i].subtiles.begin(), chords[i].subtiles.end(),
                                          chords[j].subtiles.begin(), chords[j].subtiles.end(),
                                          std::back_inserter(common));
                    if (common.empty())
                        throw std::logic_error(
                            "crossing condition violated: interleaving bones in disjoint subtiles");
                    cross[i].push_back(j);
                    cross[j].push_back(i);
                }
            }
        // components of the crossing relation
        std::vector<int> comp(nc, -1);
        int ncomp = 0;
        for (int i = 0; i < nc; ++i) {
            if (comp[i] != -1) continue;
            std::vector<int> stack{i};
            comp[i] = ncomp;
            while (!stack.empty()) {
                int x = stack.back();
                stack.pop_back();
                for (int y : cross[x])
                    if (comp[y] == -1) {
                        comp[y] = ncomp;
                        stack.push_back(y);
                    }
            }
            ncomp++;
        }
        // Clique units: endpoints of each crossing component span a complete
        // graph; all chords with both endpoints in the span belong to the
        // unit (a star tree). Remaining chords stay loose.
        std::set<std::pair<Endpoint, Endpoint>> all_pairs;
        for (const Chord& ch : chords) all_pairs.insert({ch.a, ch.b});
        std::vector<bool> absorbed(nc, false);
        std::vector<std::set<Endpoint>> cliques;
        for (int c = 0; c < ncomp; ++c) {
            std::vector<int> members;
            for (int i = 0; i < nc; ++i)
                if (comp[i] == c) members.push_back(i);
            if (members.size() < 2) continue;
            std::set<Endpoint> w;
            for (int i : members) {
                w.insert(chords[i].a);
                w.insert(chords[i].b);
            }
            for (auto it1 = w.begin(); it1 != w.end(); ++it1)
                for (auto it2 = std::next(it1); it2 != w.end(); ++it2)
                    if (!all_pairs.count({*it1, *it2}))
                        throw std::logic_error(
                            "crossing condition violated: clique on boundary points incomplete");
            for (const auto& other : cliques) {
                int shared = 0;
                for (const Endpoint& p : w) shared += other.count(p) ? 1 : 0;
                if (shared > 1)
                    throw std::logic_error(
                        "crossing condition violated: clique units overlap in two points");
            }
            for (int i = 0; i < nc; ++i)
                if (w.count(chords[i].a) && w.count(chords[i].b)) absorbed[i] = true;
            cliques.push_back(std::move(w));
        }
        for (const auto& w : cliques) {
            // star tree: one center, spokes ordered by boundary position
            TrainTrack::Vertex center;
            center.kind = TrainTrack::VKind::StarCenter;
            center.anchor_tile = t0;
            tt.vertices.push_back(center);
            int cid = static_cast<int>(tt.vertices.size() - 1);
            std::vector<Endpoint> leaves(w.begin(), w.end());
            std::sort(leaves.begin(), leaves.end(), [&](const Endpoint& x, const Endpoint& y) {
                return poly_pos(t0, x) < poly_pos(t0, y);
            });
            for (const Endpoint& leaf : leaves) {
                TrainTrack::Edge e;
                e.kind = TrainTrack::EKind::StarSpoke;
                e.p0_tile = t0;
                e.v[0] = cid;
                e.v[1] = -1;
                tt.edges.push_back(e);
                arrivals[leaf].push_back({static_cast<int>(tt.edges.size() - 1), 1});
                // center gates are singletons
                tt.vertices[cid].gates.push_back(
                    {{static_cast<int>(tt.edges.size() - 1), 0}});
            }
        }
        for (int i = 0; i < nc; ++i) {
            if (absorbed[i]) continue;
            const Chord& ch = chords[i];
            TrainTrack::Edge e;
            e.kind = TrainTrack::EKind::BoneChord;
            e.p0_tile = t0;
            e.v[0] = e.v[1] = -1;  // endpoints resolved after zipping
            tt.edges.push_back(e);
            arrivals[ch.a].push_back({static_cast<int>(tt.edges.size() - 1), 0});
            arrivals[ch.b].push_back({static_cast<int>(tt.edges.size() - 1), 1});
        }
    }

    // zip-ups and attachment of pending ends
    for (auto& [ep, ends] : arrivals) {
        int target;
        if (ends.size() >= 2) {
            TrainTrack::Vertex z;
            z.kind = TrainTrack::VKind::Zip;
            z.anchor_edge = ep.edge;
            z.slot = ep.slot;
            auto [tile, m] = lc.edges[ep.edge].slots[ep.slot];
            z.anchor_tile = lc.tiles[tile].p0_tile;
            tt.vertices.push_back(z);
            int zid = static_cast<int>(tt.vertices.size() - 1);
            int p = get_point_vertex(ep.edge);
            TrainTrack::Edge stub;
            stub.kind = TrainTrack::EKind::ZipStub;
            stub.p0_tile = z.anchor_tile;
            stub.v[0] = zid;
            stub.v[1] = p;
            stub.end_slot[1] = ep.slot;
            tt.edges.push_back(stub);
            int sid = static_cast<int>(tt.edges.size() - 1);
            // zip gates: all bones in one gate, the stub in the other
            std::vector<std::pair<int, int>> bone_gate;
            for (auto [e, end] : ends) {
                tt.edges[e].v[end] = zid;
                bone_gate.push_back({e, end});
            }
            tt.vertices[zid].gates.push_back(bone_gate);
            tt.vertices[zid].gates.push_back({{sid, 0}});
            target = -1;
            (void)target;
        } else if (ends.size() == 1) {
            int p = get_point_vertex(ep.edge);
            auto [e, end] = ends[0];
            tt.edges[e].v[end] = p;
            tt.edges[e].end_slot[end] = ep.slot;
        }
    }

    // gates at boundary points: group ends by slot side
    for (auto& [edge, vid] : point_vertex) {
        std::map<int, std::vector<std::pair<int, int>>> by_slot;
        for (size_t e = 0; e < tt.edges.size(); ++e)
            for (int end = 0; end < 2; ++end) {
                if (tt.edges[e].v[end] != vid) continue;
                int slot = tt.edges[e].end_slot[end];
                if (slot < 0) throw std::logic_error("cannot determine slot side of an end");
                by_slot[slot].push_back({static_cast<int>(e), end});
            }
        for (auto& [slot, ends] : by_slot) {
            if (ends.size() != 1)
                throw std::logic_error("boundary point with unzipped multiple ends");
            tt.vertices[vid].gates.push_back(ends);
        }
    }
    return tt;
}

namespace {

std::string vlabel(const LeveledComplex& lc, const TrainTrack& t, int v) {
    const auto& vx = t.vertices[v];
    switch (vx.kind) {
        case TrainTrack::VKind::BoundaryPoint:
            return "P" + std::to_string(lc.edges[vx.anchor_edge].p0_edge);
        case TrainTrack::VKind::Zip:
            return "Z" + std::to_string(lc.edges[vx.anchor_edge].p0_edge) + "." +
                   std::to_string(vx.anchor_tile);
        case TrainTrack::VKind::StarCenter:
            return "S" + std::to_string(vx.anchor_tile);
    }
    return "?";
}

std::string elabel(const TrainTrack& t, int e) {
    const auto& ed = t.edges[e];
    std::string k = ed.kind == TrainTrack::EKind::BoneChord
                        ? "B"
                        : (ed.kind == TrainTrack::EKind::StarSpoke ? "S" : "Z");
    return k + std::to_string(ed.p0_tile);
}

}  // namespace

bool spine_isomorphic(const CompiledSpec& cs, const TrainTrack& a, const LeveledComplex& lca,
                      const TrainTrack& b, const LeveledComplex& lcb) {
    (void)cs;
    if (a.vertices.size() != b.vertices.size() || a.edges.size() != b.edges.size()) return false;
    int nv = static_cast<int>(a.vertices.size());

    // quick label multiset check
    {
        std::multiset<std::string> la, lb;
        for (int v = 0; v < nv; ++v) {
            la.insert(vlabel(lca, a, v));
            lb.insert(vlabel(lcb, b, v));
        }
        if (la != lb) return false;
        std::multiset<std::string> ea, eb;
        for (size_t e = 0; e < a.edges.size(); ++e) {
            ea.insert(elabel(a, static_cast<int>(e)));
            eb.insert(elabel(b, static_cast<int>(e)));
        }
        if (ea != eb) return false;
    }

    // adjacency with edge labels
    auto adj = [](const TrainTrack& t) {
        std::vector<std::vector<std::pair<int, int>>> out(t.vertices.size());  // (other, edge)
        for (size_t e = 0; e < t.edges.size(); ++e) {
            out[t.edges[e].v[0]].push_back({t.edges[e].v[1], static_cast<int>(e)});
            out[t.edges[e].v[1]].push_back({t.edges[e].v[0], static_cast<int>(e)});
        }
        return out;
    };
    auto aa = adj(a), ab = adj(b);

    std::vector<int> vmap(nv, -1), used(nv, 0);
    std::vector<int> emap(a.edges.size(), -1), eused(b.edges.size(), 0);

    // backtracking over vertices in order
    std::function<bool(int)> rec = [&](int v) -> bool {
        if (v == nv) {
            // verify gates are preserved
            for (int x = 0; x < nv; ++x) {
                const auto& ga = a.vertices[x].gates;
                const auto& gb = b.vertices[vmap[x]].gates;
                if (ga.size() != gb.size()) return false;
                // each a-gate must map into a single b-gate, bijectively
                std::set<std::set<std::pair<int, int>>> sa, sb;
                for (const auto& g : ga) {
                    std::set<std::pair<int, int>> s;
                    for (auto [e, end] : g) {
                        int be = emap[e];
                        int bend = (b.edges[be].v[end] == vmap[x]) ? end : 1 - end;
                        if (b.edges[be].v[bend] != vmap[x]) return false;
                        s.insert({be, bend});
                    }
                    sa.insert(s);
                }
                for (const auto& g : gb) {
                    std::set<std::pair<int, int>> s;
                    for (auto [e, end] : g) s.insert({e, end});
                    sb.insert(s);
                }
                if (sa != sb) return false;
            }
            return true;
        }
        for (int w = 0; w < nv; ++w) {
            if (used[w] || vlabel(lca, a, v) != vlabel(lcb, b, w)) continue;
            if (aa[v].size() != ab[w].size()) continue;
            // tentatively match; edges matched greedily with backtracking
            vmap[v] = w;
            used[w] = 1;
            // try to extend edge map for edges with both endpoints mapped
            std::vector<int> newly;
            bool ok = true;
            for (auto [u2, e] : aa[v]) {
                if (vmap[u2] == -1 || emap[e] != -1) continue;
                // find an unused b-edge between vmap[v], vmap[u2] with same label
                int found = -1;
                for (auto [w2, be] : ab[w]) {
                    if (w2 != vmap[u2] || eused[be] || elabel(b, be) != elabel(a, e)) continue;
                    found = be;
                    break;
                }
                if (found == -1) {
                    ok = false;
                    break;
                }
                emap[e] = found;
                eused[found] = 1;
                newly.push_back(e);
            }
            if (ok && rec(v + 1)) return true;
            for (int e : newly) {
                eused[emap[e]] = 0;
                emap[e] = -1;
            }
            vmap[v] = -1;
            used[w] = 0;
        }
        return false;
    };
    return rec(0);
}

}  // namespace fsr
