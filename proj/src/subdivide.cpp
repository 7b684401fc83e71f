#include "fsr/subdivide.hpp"

#include <algorithm>
#include <stdexcept>

namespace fsr {

std::map<BandKey, std::vector<Subband>> recurrent_subbands(const CompiledSpec& cs,
                                                           const LeveledComplex& lc,
                                                           const Digraph& band_graph) {
    std::map<BandKey, std::vector<Subband>> out;
    for (const BandKey& b : all_bands(cs)) out[b];  // ensure keys exist

    for (size_t ti = 0; ti < lc.tiles.size(); ++ti) {
        const auto& T = lc.tiles[ti];
        int n = static_cast<int>(T.side_edge.size());
        for (int m1 = 0; m1 < n; ++m1) {
            if (T.side_anchor[m1] < 0) continue;
            for (int m2 = m1 + 1; m2 < n; ++m2) {
                if (T.side_anchor[m2] < 0) continue;
                int a1 = T.side_anchor[m1], a2 = T.side_anchor[m2];
                if (a1 == a2) continue;  // not a subband of a level-0 band
                BandKey base{T.p0_tile, std::min(a1, a2), std::max(a1, a2)};
                BandKey type_key{T.type, m1, m2};
                int from = *band_graph.node_by_label(band_label(cs, type_key));
                int to = *band_graph.node_by_label(band_label(cs, base));
                // A level-n subband is recurrent iff its terminal node (its
                // type) reaches the start [base]; at level 0 this degenerates
                // to the band being periodic.
                if (!band_graph.reaches(from, to)) continue;
                Subband sb;
                sb.tile = static_cast<int>(ti);
                sb.m1 = m1;
                sb.m2 = m2;
                sb.edge1 = T.side_edge[m1];
                sb.edge2 = T.side_edge[m2];
                sb.anchor1 = a1;
                sb.anchor2 = a2;
                out[base].push_back(sb);
            }
        }
    }
    return out;
}

namespace {

// Level-n expansion of an edge type: ordered (type, dir) pairs.
std::vector<DirectedRef> expand_edge_type(const FsrSpec& spec, const std::string& id, int n) {
    std::vector<DirectedRef> cur{{id, 1}};
    for (int step = 0; step < n; ++step) {
        std::vector<DirectedRef> next;
        for (const auto& [x, d] : cur) {
            const EdgeTypeDef* e = spec.edge(x);
            if (d > 0)
                for (const auto& s : e->subdivision) next.push_back(s);
            else
                for (auto it = e->subdivision.rbegin(); it != e->subdivision.rend(); ++it)
                    next.push_back({it->id, -it->dir});
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

FsrSpec derive_rule_at_level(const CompiledSpec& cs, int n) {
    if (n < 1) throw std::invalid_argument("level must be >= 1");
    const FsrSpec& spec = cs.spec;
    bool reversing_n = spec.orientation == Orientation::Reversing && (n % 2 == 1);
    FsrSpec out;
    out.name = spec.name + "^" + std::to_string(n);
    out.orientation = reversing_n ? Orientation::Reversing : Orientation::Preserving;
    Dir sigma_n = reversing_n ? -1 : 1;

    for (const auto& e : spec.edge_types) {
        EdgeTypeDef ne;
        ne.id = e.id;
        ne.subdivision = expand_edge_type(spec, e.id, n);
        out.edge_types.push_back(std::move(ne));
    }

    for (size_t t = 0; t < spec.tile_types.size(); ++t) {
        const TileTypeDef& tile = spec.tile_types[t];
        TileTypeDef nt;
        nt.id = tile.id;
        nt.boundary = tile.boundary;
        LeveledComplex lc = tile_complex(cs, static_cast<int>(t), n);
        for (const auto& tl : lc.tiles)
            if (tl.orient != 1)
                throw std::logic_error("mixed orientation in subdivided polygon");

        int ar = tile.arity();
        // Side points along each polygon side, in side-forward order.
        std::vector<std::string> vname(lc.vertices.size());
        SubdivisionChart& ch = nt.chart;
        std::vector<bool> named(lc.vertices.size(), false);
        for (int c = 0; c < ar; ++c) {
            ChartVertex v;
            v.id = "c" + std::to_string(c);
            v.kind = ChartVertex::Corner;
            v.side = c;
            ch.vertices.push_back(v);
            vname[c] = v.id;  // corners keep ids 0..ar-1 through carrying
            named[c] = true;
        }
        for (int i = 0; i < ar; ++i) {
            Dir eps = tile.boundary[i].dir;
            const auto& exp = lc.edge_expansion[i];  // along the side edge's intrinsic dir
            int m = static_cast<int>(exp.size());
            for (int j = 1; j < m; ++j) {
                // junction j along intrinsic; position along side-forward:
                int pos = eps > 0 ? j : m - j;
                auto [eid, d] = exp[j - 1];
                int junc = d > 0 ? lc.edges[eid].head : lc.edges[eid].tail;
                if (named[junc]) continue;
                ChartVertex v;
                v.id = "p" + std::to_string(i) + "_" + std::to_string(pos);
                v.kind = ChartVertex::SidePoint;
                v.side = i;
                v.pos = pos;
                ch.vertices.push_back(v);
                vname[junc] = v.id;
                named[junc] = true;
            }
        }
        for (size_t vi = 0; vi < lc.vertices.size(); ++vi) {
            if (named[vi]) continue;
            ChartVertex v;
            v.id = "i" + std::to_string(vi);
            v.kind = ChartVertex::Interior;
            ch.vertices.push_back(v);
            vname[vi] = v.id;
            named[vi] = true;
        }
        std::vector<std::string> ename(lc.edges.size());
        for (size_t ei = 0; ei < lc.edges.size(); ++ei) {
            ChartSubedge se;
            se.id = "s" + std::to_string(ei);
            se.from = vname[lc.edges[ei].tail];
            se.to = vname[lc.edges[ei].head];
            ch.subedges.push_back(se);
            ename[ei] = se.id;
        }
        for (size_t fi = 0; fi < lc.tiles.size(); ++fi) {
            const auto& T = lc.tiles[fi];
            ChartSubtile st;
            st.id = "f" + std::to_string(fi);
            st.type = spec.tile_types[T.type].id;
            int nn = static_cast<int>(T.side_edge.size());
            if (sigma_n > 0) {
                st.offset = 0;
                for (int m = 0; m < nn; ++m)
                    st.boundary.push_back({ename[T.side_edge[m]], T.side_dir[m]});
            } else {
                st.offset = nn - 1;
                for (int m = nn - 1; m >= 0; --m)
                    st.boundary.push_back(
                        {ename[T.side_edge[m]], static_cast<Dir>(-T.side_dir[m])});
            }
            ch.subtiles.push_back(std::move(st));
        }
        out.tile_types.push_back(std::move(nt));
    }
    return out;
}

FsrSpec square_rule(const CompiledSpec& cs) { return derive_rule_at_level(cs, 2); }

FsrSpec compose_with_automorphism(const CompiledSpec& cs, const CellularAutomorphism& tau) {
    const FsrSpec& spec = cs.spec;
    // Check tau is a cellular automorphism compatible with boundary words.
    for (const auto& e : spec.edge_types)
        if (!tau.edge_map.count(e.id) || !spec.edge(tau.edge_map.at(e.id).id))
            throw std::invalid_argument("not an automorphism: edge map incomplete at " + e.id);
    for (const auto& t : spec.tile_types) {
        auto it = tau.tile_map.find(t.id);
        if (it == tau.tile_map.end())
            throw std::invalid_argument("not an automorphism: tile map incomplete at " + t.id);
        const TileTypeDef* img = spec.tile(it->second.first);
        if (!img || img->arity() != t.arity())
            throw std::invalid_argument("not an automorphism: arity mismatch at " + t.id);
        int r = it->second.second;
        int nn = t.arity();
        for (int m = 0; m < nn; ++m) {
            const DirectedRef& src = t.boundary[m];
            const DirectedRef& em = tau.edge_map.at(src.id);
            int target_side = tau.reflecting ? ((r - m) % nn + nn) % nn : (r + m) % nn;
            const DirectedRef& dst = img->boundary[target_side];
            Dir want = tau.reflecting ? -src.dir * em.dir : src.dir * em.dir;
            if (dst.id != em.id || dst.dir != want)
                throw std::invalid_argument("not an automorphism: boundary word broken at " +
                                            t.id + " side " + std::to_string(m));
        }
    }

    FsrSpec out = spec;
    out.name = spec.name + "_tau";
    bool flip = tau.reflecting;
    bool was_rev = spec.orientation == Orientation::Reversing;
    out.orientation = (was_rev != flip) ? Orientation::Reversing : Orientation::Preserving;

    for (auto& e : out.edge_types)
        for (auto& s : e.subdivision) {
            const DirectedRef& em = tau.edge_map.at(s.id);
            s = {em.id, static_cast<Dir>(s.dir * em.dir)};
        }
    for (auto& t : out.tile_types)
        for (auto& st : t.chart.subtiles) {
            auto [img, r] = tau.tile_map.at(st.type);
            int nn = spec.tile(st.type)->arity();
            if (!tau.reflecting)
                st.offset = (r + st.offset) % nn;
            else
                st.offset = ((r - st.offset) % nn + nn) % nn;
            st.type = img;
        }
    return out;
}

}  // namespace fsr
