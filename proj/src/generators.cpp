#include "fsr/generators.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace fsr {

namespace {

std::string edge_name(int e) { return "e" + std::to_string(e); }
std::string tile_name(int f) { return "t" + std::to_string(f); }

// forward dart of an edge: the smaller dart id
int forward_dart(const PlanarGraph& g, int edge) {
    for (int d = 0; d < g.dart_count(); ++d)
        if (g.dart(d).edge == edge) return std::min(d, g.dart(d).reverse);
    throw std::logic_error("edge without darts");
}

Dir dart_dir(const PlanarGraph& g, int d) {
    return d == std::min(d, g.dart(d).reverse) ? 1 : -1;
}

// level-0 tiles/edges shared by both generators: tile per face with the
// face walk as the boundary word
void base_complex(const PlanarGraph& g, FsrSpec& spec) {
    for (int e = 0; e < g.edge_count(); ++e) {
        EdgeTypeDef et;
        et.id = edge_name(e);
        et.subdivision = {{edge_name(e), 1}};  // edges never subdivide
        spec.edge_types.push_back(et);
    }
    for (int f = 0; f < g.face_count(); ++f) {
        TileTypeDef tt;
        tt.id = tile_name(f);
        for (int d : g.faces()[f]) tt.boundary.push_back({edge_name(g.dart(d).edge), dart_dir(g, d)});
        spec.tile_types.push_back(tt);
    }
}

}  // namespace

FaceInversionResult face_inversion(const PlanarGraph& g,
                                   const std::optional<std::vector<int>>& tau_vertex_perm,
                                   bool square) {
    FaceInversionResult res;
    if (!g.connected()) throw std::invalid_argument("not 2-vertex-connected: disconnected");
    auto conn = g.edge_connectivity();
    if (!conn.two_vertex_connected)
        throw std::invalid_argument("not 2-vertex-connected: a face boundary is not a Jordan curve");
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 2)
            res.warnings.push_back("vertex " + g.vertex_name(v) +
                                   " has degree 2 (not a critical point; it could be removed)");

    FsrSpec spec;
    spec.name = "face_inversion";
    spec.orientation = Orientation::Reversing;
    base_complex(g, spec);

    // chart of tile F: the reflected copy of g inside F
    for (int f = 0; f < g.face_count(); ++f) {
        const auto& walk = g.faces()[f];
        int n = static_cast<int>(walk.size());
        TileTypeDef& tt = spec.tile_types[f];
        SubdivisionChart& ch = tt.chart;

        // boundary vertices are the walk corners; others get mirror copies
        std::vector<int> corner_of_vertex(g.vertex_count(), -1);
        for (int s = 0; s < n; ++s) corner_of_vertex[g.dart(walk[s]).vertex] = s;
        std::vector<std::string> vname(g.vertex_count());
        for (int v = 0; v < g.vertex_count(); ++v) {
            ChartVertex cv;
            if (corner_of_vertex[v] >= 0) {
                cv.id = "c" + std::to_string(corner_of_vertex[v]);
                cv.kind = ChartVertex::Corner;
                cv.side = corner_of_vertex[v];
            } else {
                cv.id = "mv" + std::to_string(v);
                cv.kind = ChartVertex::Interior;
            }
            vname[v] = cv.id;
            ch.vertices.push_back(cv);
        }

        // subedges: sides stay themselves, everything else is mirrored
        std::vector<int> side_of_edge(g.edge_count(), -1);
        for (int s = 0; s < n; ++s) side_of_edge[g.dart(walk[s]).edge] = s;
        std::vector<std::string> sub_of_edge(g.edge_count());
        for (int e = 0; e < g.edge_count(); ++e) {
            ChartSubedge se;
            int fd = forward_dart(g, e);
            if (side_of_edge[e] >= 0) {
                int s = side_of_edge[e];
                se.id = "b" + std::to_string(s);
                // from corner(s) to corner(s+1): along the side-forward walk
                se.from = "c" + std::to_string(s);
                se.to = "c" + std::to_string((s + 1) % n);
            } else {
                se.id = "me" + std::to_string(e);
                se.from = vname[g.dart(fd).vertex];
                se.to = vname[g.dart(g.dart(fd).reverse).vertex];
            }
            sub_of_edge[e] = se.id;
            ch.subedges.push_back(se);
        }

        // subtiles: every other face, boundary reversed with flipped dirs
        for (int f2 = 0; f2 < g.face_count(); ++f2) {
            if (f2 == f) continue;
            const auto& w2 = g.faces()[f2];
            int m = static_cast<int>(w2.size());
            ChartSubtile st;
            st.id = "f" + std::to_string(f2);
            st.type = tile_name(f2);
            st.offset = m - 1;
            for (int a = 0; a < m; ++a) {
                int d = w2[m - 1 - a];
                int e = g.dart(d).edge;
                Dir travel;
                if (side_of_edge[e] >= 0) {
                    // side subedge runs along this face's own walk dart
                    travel = (d == walk[side_of_edge[e]]) ? 1 : -1;
                } else {
                    travel = dart_dir(g, d);
                }
                st.boundary.push_back({sub_of_edge[e], static_cast<Dir>(-travel)});
            }
            ch.subtiles.push_back(std::move(st));
        }
    }

    if (tau_vertex_perm) {
        auto aut = reversing_automorphism(g, *tau_vertex_perm);
        if (!aut) throw std::invalid_argument("tau is not an orientation-reversing automorphism");
        CompiledSpec cs = compile_rule(spec);
        spec = compose_with_automorphism(cs, *aut);
    }
    if (square) {
        CompiledSpec cs = compile_rule(spec);
        spec = square_rule(cs);
    }
    spec.sort_by_id();
    res.spec = std::move(spec);
    return res;
}

FsrSpec blowup_rule(const PlanarGraph& g) {
    if (!g.connected()) throw std::invalid_argument("disconnected");
    if (g.has_loop()) throw std::invalid_argument("loop edge");
    if (g.edge_count() == 0) throw std::invalid_argument("graph has no edge");

    FsrSpec spec;
    spec.name = "blowup";
    spec.orientation = Orientation::Preserving;
    base_complex(g, spec);

    for (int f = 0; f < g.face_count(); ++f) {
        const auto& walk = g.faces()[f];
        int n = static_cast<int>(walk.size());
        TileTypeDef& tt = spec.tile_types[f];
        SubdivisionChart& ch = tt.chart;

        for (int s = 0; s < n; ++s) {
            ChartVertex cv;
            cv.id = "c" + std::to_string(s);
            cv.kind = ChartVertex::Corner;
            cv.side = s;
            ch.vertices.push_back(cv);
        }
        // per-side boundary subedges
        for (int s = 0; s < n; ++s) {
            ChartSubedge se;
            se.id = "b" + std::to_string(s);
            se.from = "c" + std::to_string(s);
            se.to = "c" + std::to_string((s + 1) % n);
            ch.subedges.push_back(se);
        }

        // disks sit on the left of forward darts: side s hosts a disk iff
        // its walk dart is the forward dart of its edge
        std::vector<bool> hosts_disk(n, false);
        for (int s = 0; s < n; ++s) hosts_disk[s] = dart_dir(g, walk[s]) > 0;

        // central subtile: sides with disks are bounded by the gamma' arc
        {
            ChartSubtile st;
            st.id = "center";
            st.type = tile_name(f);
            st.offset = 0;
            for (int s = 0; s < n; ++s) {
                if (hosts_disk[s]) {
                    ChartSubedge se;
                    se.id = "g" + std::to_string(s);
                    se.from = "c" + std::to_string(s);
                    se.to = "c" + std::to_string((s + 1) % n);
                    ch.subedges.push_back(se);
                    st.boundary.push_back({se.id, 1});
                } else {
                    st.boundary.push_back({"b" + std::to_string(s), 1});
                }
            }
            ch.subtiles.push_back(std::move(st));
        }

        // one full copy of the complex inside each hosted disk
        for (int s = 0; s < n; ++s) {
            if (!hosts_disk[s]) continue;
            int ds = walk[s];  // forward dart; disk of edge(ds) inside f
            int x = g.dart(ds).edge;
            std::string pre = "D" + std::to_string(s) + "_";
            int xt = g.dart(ds).vertex;                        // tail of forward dart
            int xh = g.dart(g.dart(ds).reverse).vertex;        // head
            auto copy_vertex = [&](int v) -> std::string {
                if (v == xt) return "c" + std::to_string(s);
                if (v == xh) return "c" + std::to_string((s + 1) % n);
                return pre + "v" + std::to_string(v);
            };
            for (int v = 0; v < g.vertex_count(); ++v) {
                if (v == xt || v == xh) continue;
                ChartVertex cv;
                cv.id = pre + "v" + std::to_string(v);
                cv.kind = ChartVertex::Interior;
                ch.vertices.push_back(cv);
            }
            for (int e = 0; e < g.edge_count(); ++e) {
                if (e == x) continue;
                int fd = forward_dart(g, e);
                ChartSubedge se;
                se.id = pre + "e" + std::to_string(e);
                se.from = copy_vertex(g.dart(fd).vertex);
                se.to = copy_vertex(g.dart(g.dart(fd).reverse).vertex);
                ch.subedges.push_back(se);
            }
            for (int f2 = 0; f2 < g.face_count(); ++f2) {
                ChartSubtile st;
                st.id = pre + "f" + std::to_string(f2);
                st.type = tile_name(f2);
                st.offset = 0;
                for (int d : g.faces()[f2]) {
                    int e = g.dart(d).edge;
                    if (e == x) {
                        if (d == ds)  // the copy beside gamma runs along side s
                            st.boundary.push_back({"b" + std::to_string(s), 1});
                        else  // the reverse dart's copy runs along gamma'
                            st.boundary.push_back({"g" + std::to_string(s), -1});
                    } else {
                        st.boundary.push_back({pre + "e" + std::to_string(e), dart_dir(g, d)});
                    }
                }
                ch.subtiles.push_back(std::move(st));
            }
        }
    }
    spec.sort_by_id();
    return spec;
}

std::optional<CellularAutomorphism> reversing_automorphism(const PlanarGraph& g,
                                                           const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != g.vertex_count()) return std::nullopt;
    std::vector<int> inv(perm.size(), -1);
    for (size_t v = 0; v < perm.size(); ++v) {
        if (perm[v] < 0 || perm[v] >= g.vertex_count() || inv[perm[v]] != -1) return std::nullopt;
        inv[perm[v]] = static_cast<int>(v);
    }
    // dart position lookup
    std::vector<int> pos(g.dart_count());
    for (int v = 0; v < g.vertex_count(); ++v)
        for (size_t i = 0; i < g.rotation(v).size(); ++i) pos[g.rotation(v)[i]] = static_cast<int>(i);

    auto head = [&](int d) { return g.dart(g.dart(d).reverse).vertex; };

    // seed: map dart 0 to any dart from perm[tail(0)] to perm[head(0)];
    // propagate the orientation-reversing condition along rotations and
    // reverses.
    for (int seed : g.rotation(perm[g.dart(0).vertex])) {
        if (head(seed) != perm[head(0)]) continue;
        std::vector<int> dmap(g.dart_count(), -1);
        dmap[0] = seed;
        std::deque<int> q{0};
        bool ok = true;
        while (!q.empty() && ok) {
            int d = q.front();
            q.pop_front();
            int v = g.dart(d).vertex;
            int dv = g.dart(dmap[d]).vertex;
            if (dv != perm[v]) {
                ok = false;
                break;
            }
            const auto& r = g.rotation(v);
            const auto& r2 = g.rotation(dv);
            if (r.size() != r2.size()) {
                ok = false;
                break;
            }
            int k = static_cast<int>(r.size());
            // reversing: rotation order flips
            int next = r[(pos[d] + 1) % k];
            int want = r2[((pos[dmap[d]] - 1) % k + k) % k];
            if (dmap[next] == -1) {
                dmap[next] = want;
                q.push_back(next);
            } else if (dmap[next] != want) {
                ok = false;
                break;
            }
            int rev = g.dart(d).reverse;
            int wantr = g.dart(dmap[d]).reverse;
            if (dmap[rev] == -1) {
                dmap[rev] = wantr;
                q.push_back(rev);
            } else if (dmap[rev] != wantr) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        for (int d = 0; d < g.dart_count() && ok; ++d) ok = dmap[d] != -1;
        if (!ok) continue;  // disconnected graphs unsupported here
        // verify bijectivity and head condition
        std::vector<bool> hit(g.dart_count(), false);
        for (int d = 0; d < g.dart_count() && ok; ++d) {
            if (hit[dmap[d]] || head(dmap[d]) != perm[head(d)]) ok = false;
            hit[dmap[d]] = true;
        }
        if (!ok) continue;

        CellularAutomorphism aut;
        aut.reflecting = true;
        for (int e = 0; e < g.edge_count(); ++e) {
            int fd = forward_dart(g, e);
            int img = dmap[fd];
            aut.edge_map[edge_name(e)] = {edge_name(g.dart(img).edge), dart_dir(g, img)};
        }
        // faces: tau maps the face left of d to the face left of
        // reverse(dmap[d]); side 0 lands at the reversed position.
        for (int f = 0; f < g.face_count(); ++f) {
            int d0 = g.faces()[f][0];
            int img_dart = g.dart(dmap[d0]).reverse;
            int f2 = g.face_of_dart(img_dart);
            const auto& w2 = g.faces()[f2];
            int r = -1;
            for (size_t i = 0; i < w2.size(); ++i)
                if (w2[i] == img_dart) r = static_cast<int>(i);
            aut.tile_map[tile_name(f)] = {tile_name(f2), r};
        }
        return aut;
    }
    return std::nullopt;
}

}  // namespace fsr
