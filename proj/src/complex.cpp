#include "fsr/complex.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fsr {

namespace {

Dir side_dir_of(const CompiledSpec&, const LeveledComplex::Tile& t, int side) {
    return t.side_dir[side];
}

// f restricted to level-0 vertices, derived from chart corner images.
std::vector<int> level0_vertex_image(const CompiledSpec& cs) {
    std::vector<int> img(cs.level0.vertex_count, -1);
    for (size_t ti = 0; ti < cs.spec.tile_types.size(); ++ti) {
        const CompiledChart& cc = cs.charts[ti];
        for (size_t vi = 0; vi < cc.vertices.size(); ++vi) {
            if (cc.vertices[vi].kind != ChartVertex::Corner) continue;
            int v0 = cs.level0.tile_corner_vertex[ti][cc.vertices[vi].side];
            if (img[v0] == -1)
                img[v0] = cc.vertex_image[vi];
            else if (img[v0] != cc.vertex_image[vi])
                throw std::logic_error("inconsistent level-0 vertex image");
        }
    }
    for (int v : img)
        if (v < 0) throw std::logic_error("level-0 vertex image undetermined");
    return img;
}

void fill_slots(LeveledComplex& lc) {
    for (auto& e : lc.edges) e.slots.clear();
    for (size_t t = 0; t < lc.tiles.size(); ++t)
        for (size_t m = 0; m < lc.tiles[t].side_edge.size(); ++m)
            lc.edges[lc.tiles[t].side_edge[m]].slots.push_back(
                {static_cast<int>(t), static_cast<int>(m)});
    for (const auto& e : lc.edges)
        if (e.slots.empty() || e.slots.size() > 2)
            throw std::logic_error("edge with " + std::to_string(e.slots.size()) + " slots");
}

void orient_tiles(const CompiledSpec& cs, LeveledComplex& lc) {
    for (auto& t : lc.tiles) t.orient = 0;
    for (size_t seed = 0; seed < lc.tiles.size(); ++seed) {
        if (lc.tiles[seed].orient != 0) continue;
        lc.tiles[seed].orient = 1;
        std::deque<int> q{static_cast<int>(seed)};
        while (!q.empty()) {
            int t = q.front();
            q.pop_front();
            for (size_t m = 0; m < lc.tiles[t].side_edge.size(); ++m) {
                const auto& e = lc.edges[lc.tiles[t].side_edge[m]];
                if (e.slots.size() != 2) continue;
                auto [t1, m1] = e.slots[0];
                auto [t2, m2] = e.slots[1];
                int other = t1 == t && m1 == static_cast<int>(m) ? t2 : t1;
                int mo = t1 == t && m1 == static_cast<int>(m) ? m2 : m1;
                Dir mine = side_dir_of(cs, lc.tiles[t], static_cast<int>(m));
                Dir theirs = side_dir_of(cs, lc.tiles[other], mo);
                int want = -lc.tiles[t].orient * mine * theirs;
                if (lc.tiles[other].orient == 0) {
                    lc.tiles[other].orient = want;
                    q.push_back(other);
                } else if (lc.tiles[other].orient != want) {
                    throw std::logic_error("complex is not orientable");
                }
            }
        }
    }
}

// Build rotations by stitching corner wedges counterclockwise.
void build_rotations(const CompiledSpec& cs, LeveledComplex& lc) {
    lc.vertex_rotation.assign(lc.vertices.size(), {});
    lc.vertex_wedges.assign(lc.vertices.size(), {});
    bool closed = true;
    for (const auto& e : lc.edges) closed = closed && e.slots.size() == 2;
    if (!closed) return;  // rotations are only used for closed complexes

    // corners per vertex
    std::vector<std::vector<std::pair<int, int>>> corners(lc.vertices.size());
    for (size_t t = 0; t < lc.tiles.size(); ++t) {
        int n = static_cast<int>(lc.tiles[t].side_edge.size());
        for (int c = 0; c < n; ++c)
            corners[lc.corner_vertex(static_cast<int>(t), c)].push_back(
                {static_cast<int>(t), c});
    }

    struct Ray {
        int edge;
        int end;  // 0 = tail end, 1 = head end
        bool operator==(const Ray& o) const { return edge == o.edge && end == o.end; }
    };
    auto ray_of_side_at_corner = [&](int t, int side, int corner) -> Ray {
        int e = lc.tiles[t].side_edge[side];
        Dir eps = side_dir_of(cs, lc.tiles[t], side);
        int n = static_cast<int>(lc.tiles[t].side_edge.size());
        bool at_start = corner == side;  // else corner == side+1 (mod n)
        (void)n;
        if (eps > 0) return {e, at_start ? 0 : 1};
        return {e, at_start ? 1 : 0};
    };
    // ccw-first and ccw-second rays of a wedge (tile t, corner c)
    auto wedge_rays = [&](int t, int c) -> std::pair<Ray, Ray> {
        int n = static_cast<int>(lc.tiles[t].side_edge.size());
        int prev = (c - 1 + n) % n;
        Ray r_side_c = ray_of_side_at_corner(t, c, c);
        Ray r_side_prev = ray_of_side_at_corner(t, prev, c);
        if (lc.tiles[t].orient > 0) return {r_side_c, r_side_prev};
        return {r_side_prev, r_side_c};
    };
    auto slot_index = [&](int e, int t, int m) {
        const auto& slots = lc.edges[e].slots;
        for (size_t i = 0; i < slots.size(); ++i)
            if (slots[i].first == t && slots[i].second == m) return static_cast<int>(i);
        throw std::logic_error("slot not found");
    };

    for (size_t v = 0; v < lc.vertices.size(); ++v) {
        if (corners[v].empty()) throw std::logic_error("vertex without corners");
        auto start = *std::min_element(corners[v].begin(), corners[v].end());
        auto cur = start;
        size_t emitted = 0;
        do {
            auto [t, c] = cur;
            int n = static_cast<int>(lc.tiles[t].side_edge.size());
            auto [rfirst, rsecond] = wedge_rays(t, c);
            // exit across rsecond
            int exit_side = lc.tiles[t].orient > 0 ? (c - 1 + n) % n : c;
            int e = lc.tiles[t].side_edge[exit_side];
            int from = slot_index(e, t, exit_side);
            int to = 1 - from;
            auto [t2, m2] = lc.edges[e].slots[to];
            // find the corner of t2 flanking side m2 whose ray matches (e, end)
            int n2 = static_cast<int>(lc.tiles[t2].side_edge.size());
            Ray want = rsecond;
            int c2;
            if (ray_of_side_at_corner(t2, m2, m2) == want)
                c2 = m2;
            else if (ray_of_side_at_corner(t2, m2, (m2 + 1) % n2) == want)
                c2 = (m2 + 1) % n2;
            else
                throw std::logic_error("vertex link broken: crossing mismatch");
            auto [nf, ns] = wedge_rays(t2, c2);
            if (!(nf == want)) throw std::logic_error("vertex link broken: orientation mismatch");
            if (lc.corner_vertex(t2, c2) != static_cast<int>(v))
                throw std::logic_error("vertex link broken: wrong vertex");
            lc.vertex_rotation[v].push_back({e, from, to});
            lc.vertex_wedges[v].push_back(cur);
            ++emitted;
            cur = {t2, c2};
            if (emitted > corners[v].size())
                throw std::logic_error("vertex link is not a single cycle");
        } while (cur != start);
        if (emitted != corners[v].size())
            throw std::logic_error("vertex link does not cover all corners");
    }
}

LeveledComplex subdivide_once(const CompiledSpec& cs, const LeveledComplex& prev,
                              const std::vector<int>& v_img_l0) {
    const FsrSpec& spec = cs.spec;
    LeveledComplex next;
    next.level = prev.level + 1;

    // Carry vertices (same indices), advancing their type by one f-step.
    next.vertices.reserve(prev.vertices.size());
    for (const auto& pv : prev.vertices) {
        LeveledComplex::Vertex v = pv;
        v.parent = static_cast<int>(&pv - prev.vertices.data());
        v.type_vertex = v_img_l0[pv.type_vertex];
        next.vertices.push_back(v);
    }

    // Subdivide edges.
    std::vector<std::vector<int>> children(prev.edges.size());
    std::vector<std::vector<int>> junction_vertex(prev.edges.size());
    for (size_t ei = 0; ei < prev.edges.size(); ++ei) {
        const auto& E = prev.edges[ei];
        const EdgeTypeDef& ety = spec.edge_types[E.type];
        int m = static_cast<int>(ety.subdivision.size());
        std::vector<int> stops{E.tail};
        for (int j = 1; j < m; ++j) {
            LeveledComplex::Vertex v;
            v.parent = -1;
            // image of the junction between subdivision entries j-1 and j
            const auto& before = ety.subdivision[j - 1];
            int bi = spec.edge_index(before.id);
            v.type_vertex = before.dir > 0 ? cs.level0.edge_endpoints[bi].second
                                           : cs.level0.edge_endpoints[bi].first;
            v.p0_vertex = -1;
            v.p0_edge = E.p0_edge;
            v.p0_tile = E.p0_tile;
            next.vertices.push_back(v);
            stops.push_back(static_cast<int>(next.vertices.size() - 1));
            junction_vertex[ei].push_back(stops.back());
        }
        stops.push_back(E.head);
        for (int j = 0; j < m; ++j) {
            LeveledComplex::Edge ne;
            ne.type = spec.edge_index(ety.subdivision[j].id);
            Dir d = ety.subdivision[j].dir;
            ne.tail = d > 0 ? stops[j] : stops[j + 1];
            ne.head = d > 0 ? stops[j + 1] : stops[j];
            ne.parent_edge = static_cast<int>(ei);
            ne.parent_tile = -1;
            ne.parent = static_cast<int>(ei);
            ne.p0_edge = E.p0_edge;
            ne.p0_tile = E.p0_tile;
            next.edges.push_back(ne);
            children[ei].push_back(static_cast<int>(next.edges.size() - 1));
        }
    }

    // Expand tiles through their type charts.
    for (size_t ti = 0; ti < prev.tiles.size(); ++ti) {
        const auto& T = prev.tiles[ti];
        const CompiledChart& cc = cs.charts[T.type];
        const TileTypeDef& tile = spec.tile_types[T.type];
        int n = tile.arity();

        // chart vertices -> level-(k+1) vertex ids
        std::vector<int> vmap(cc.vertices.size(), -1);
        for (size_t cvi = 0; cvi < cc.vertices.size(); ++cvi) {
            const auto& cv = cc.vertices[cvi];
            if (cv.kind == ChartVertex::Corner) {
                vmap[cvi] = prev.corner_vertex(static_cast<int>(ti), cv.side);
            } else if (cv.kind == ChartVertex::SidePoint) {
                int E = T.side_edge[cv.side];
                Dir eps = side_dir_of(cs, T, cv.side);
                int m = static_cast<int>(junction_vertex[E].size()) + 1;
                int jj = eps > 0 ? cv.pos : m - cv.pos;  // junction along intrinsic dir
                vmap[cvi] = junction_vertex[E][jj - 1];
            } else {
                LeveledComplex::Vertex v;
                v.parent = -1;
                v.type_vertex = cc.vertex_image[cvi];
                v.p0_vertex = -1;
                v.p0_edge = -1;
                v.p0_tile = T.p0_tile;
                next.vertices.push_back(v);
                vmap[cvi] = static_cast<int>(next.vertices.size() - 1);
            }
        }

        // chart subedges -> level-(k+1) edge ids
        std::vector<int> emap(cc.subedges.size(), -1);
        for (size_t sei = 0; sei < cc.subedges.size(); ++sei) {
            if (cc.subedge_on_boundary(static_cast<int>(sei))) continue;
            LeveledComplex::Edge ne;
            ne.type = cc.subedge_image_type[sei];
            int u = vmap[cc.vtx_index.at(cc.subedges[sei].from)];
            int w = vmap[cc.vtx_index.at(cc.subedges[sei].to)];
            if (cc.subedge_image_dir[sei] > 0) {
                ne.tail = u;
                ne.head = w;
            } else {
                ne.tail = w;
                ne.head = u;
            }
            ne.parent_edge = -1;
            ne.parent_tile = static_cast<int>(ti);
            ne.parent = -1;
            ne.p0_edge = -1;
            ne.p0_tile = T.p0_tile;
            next.edges.push_back(ne);
            emap[sei] = static_cast<int>(next.edges.size() - 1);
        }
        for (int i = 0; i < n; ++i) {
            int E = T.side_edge[i];
            Dir eps = side_dir_of(cs, T, i);
            int m = static_cast<int>(children[E].size());
            for (int j = 0; j < m; ++j) {
                auto [cse, d] = cc.side_seq[i][j];
                int realized = children[E][eps > 0 ? j : m - 1 - j];
                emap[cse] = realized;
                if (next.edges[realized].type != cc.subedge_image_type[cse])
                    throw std::logic_error("side subedge type mismatch during subdivision");
            }
        }

        // chart subtiles -> level-(k+1) tiles
        for (size_t si = 0; si < cc.subtiles.size(); ++si) {
            const auto& st = cc.subtiles[si];
            LeveledComplex::Tile nt;
            nt.type = cc.subtile_image_type[si];
            nt.parent = static_cast<int>(ti);
            nt.p0_tile = T.p0_tile;
            int ni = spec.tile_types[nt.type].arity();
            nt.side_edge.assign(ni, -1);
            nt.side_anchor.assign(ni, -1);
            for (int m2 = 0; m2 < ni; ++m2)
                nt.side_dir.push_back(spec.tile_types[nt.type].boundary[m2].dir);
            for (int a = 0; a < static_cast<int>(st.boundary.size()); ++a) {
                int cse = cc.sub_index.at(st.boundary[a].id);
                int s_img = cc.subtile_side_image[si][a];
                nt.side_edge[s_img] = emap[cse];
                int bside = cc.boundary_side[cse];
                nt.side_anchor[s_img] = bside >= 0 ? T.side_anchor[bside] : -1;
            }
            for (int m2 = 0; m2 < ni; ++m2) {
                if (nt.side_edge[m2] < 0)
                    throw std::logic_error("subtile side unrealized during subdivision");
                int want = spec.edge_index(spec.tile_types[nt.type].boundary[m2].id);
                if (next.edges[nt.side_edge[m2]].type != want)
                    throw std::logic_error("subtile side type mismatch during subdivision");
            }
            next.tiles.push_back(std::move(nt));
        }
    }

    // Edge expansions along level-0 edges.
    next.edge_expansion.resize(prev.edge_expansion.size());
    for (size_t e0 = 0; e0 < prev.edge_expansion.size(); ++e0) {
        for (auto [E, d] : prev.edge_expansion[e0]) {
            const auto& kids = children[E];
            const EdgeTypeDef& ety = spec.edge_types[prev.edges[E].type];
            int m = static_cast<int>(kids.size());
            if (d > 0)
                for (int j = 0; j < m; ++j)
                    next.edge_expansion[e0].push_back({kids[j], ety.subdivision[j].dir});
            else
                for (int j = m - 1; j >= 0; --j)
                    next.edge_expansion[e0].push_back(
                        {kids[j], static_cast<Dir>(-ety.subdivision[j].dir)});
        }
    }
    next.pos_on_p0.assign(next.edges.size(), -1);
    next.dir_on_p0.assign(next.edges.size(), 1);
    for (const auto& exp : next.edge_expansion)
        for (size_t idx = 0; idx < exp.size(); ++idx) {
            next.pos_on_p0[exp[idx].first] = static_cast<int>(idx);
            next.dir_on_p0[exp[idx].first] = exp[idx].second;
        }

    fill_slots(next);
    orient_tiles(cs, next);
    build_rotations(cs, next);
    return next;
}

}  // namespace

int LeveledComplex::corner_vertex(int tile, int corner) const {
    const Tile& t = tiles[tile];
    int e = t.side_edge[corner];
    return t.side_dir[corner] > 0 ? edges[e].tail : edges[e].head;
}

LeveledComplex level_complex(const CompiledSpec& cs, int n, long cap) {
    if (n < 0) throw std::invalid_argument("negative level");
    double projected = static_cast<double>(cs.spec.tile_types.size());
    for (int i = 0; i < n; ++i) projected *= cs.degree;
    if (projected > static_cast<double>(cap))
        throw std::runtime_error("size cap exceeded at level " + std::to_string(n));

    LeveledComplex lc;
    lc.level = 0;
    const Level0Info& l0 = cs.level0;
    lc.vertices.resize(l0.vertex_count);
    for (int v = 0; v < l0.vertex_count; ++v) {
        lc.vertices[v] = {v, -1, v, -1, -1};
    }
    for (size_t e = 0; e < cs.spec.edge_types.size(); ++e) {
        LeveledComplex::Edge E;
        E.type = static_cast<int>(e);
        E.tail = l0.edge_endpoints[e].first;
        E.head = l0.edge_endpoints[e].second;
        E.parent = E.parent_edge = E.parent_tile = -1;
        E.p0_edge = static_cast<int>(e);
        E.p0_tile = -1;
        lc.edges.push_back(E);
    }
    for (size_t t = 0; t < cs.spec.tile_types.size(); ++t) {
        LeveledComplex::Tile T;
        T.type = static_cast<int>(t);
        T.parent = -1;
        T.p0_tile = static_cast<int>(t);
        int n2 = cs.spec.tile_types[t].arity();
        for (int m = 0; m < n2; ++m) {
            T.side_edge.push_back(cs.spec.edge_index(cs.spec.tile_types[t].boundary[m].id));
            T.side_dir.push_back(cs.spec.tile_types[t].boundary[m].dir);
            T.side_anchor.push_back(m);
        }
        lc.tiles.push_back(std::move(T));
    }
    lc.edge_expansion.resize(lc.edges.size());
    for (size_t e = 0; e < lc.edges.size(); ++e)
        lc.edge_expansion[e].push_back({static_cast<int>(e), 1});
    lc.pos_on_p0.assign(lc.edges.size(), 0);
    lc.dir_on_p0.assign(lc.edges.size(), 1);
    fill_slots(lc);
    orient_tiles(cs, lc);
    build_rotations(cs, lc);

    std::vector<int> vimg = level0_vertex_image(cs);
    for (int i = 0; i < n; ++i) {
        lc = subdivide_once(cs, lc, vimg);
        if (lc.euler() != 2)
            throw std::logic_error("non-spherical complex at level " + std::to_string(lc.level));
    }
    if (lc.euler() != 2) throw std::runtime_error("non-spherical complex");
    return lc;
}

LeveledComplex tile_complex(const CompiledSpec& cs, int tile_type, int n, long cap) {
    const TileTypeDef& t = cs.spec.tile_types[tile_type];
    int ar = t.arity();
    double projected = 1;
    for (int i = 0; i < n; ++i) projected *= cs.degree;
    if (projected > static_cast<double>(cap))
        throw std::runtime_error("size cap exceeded at level " + std::to_string(n));

    LeveledComplex lc;
    lc.level = 0;
    // corners 0..ar-1
    for (int c = 0; c < ar; ++c)
        lc.vertices.push_back({cs.level0.tile_corner_vertex[tile_type][c], -1, -1, -1, -1});
    for (int m = 0; m < ar; ++m) {
        LeveledComplex::Edge E;
        E.type = cs.spec.edge_index(t.boundary[m].id);
        int from = m, to = (m + 1) % ar;
        if (t.boundary[m].dir > 0) {
            E.tail = from;
            E.head = to;
        } else {
            E.tail = to;
            E.head = from;
        }
        E.parent = E.parent_edge = E.parent_tile = -1;
        E.p0_edge = m;  // polygon-side edges are this complex's level-0 edges
        E.p0_tile = -1;
        lc.edges.push_back(E);
    }
    LeveledComplex::Tile T;
    T.type = tile_type;
    T.parent = -1;
    T.p0_tile = 0;
    for (int m = 0; m < ar; ++m) {
        T.side_edge.push_back(m);
        T.side_dir.push_back(t.boundary[m].dir);
        T.side_anchor.push_back(m);
    }
    lc.tiles.push_back(std::move(T));
    lc.edge_expansion.resize(ar);
    for (int e = 0; e < ar; ++e) lc.edge_expansion[e].push_back({e, 1});
    lc.pos_on_p0.assign(ar, 0);
    lc.dir_on_p0.assign(ar, 1);
    fill_slots(lc);
    lc.tiles[0].orient = 1;

    std::vector<int> vimg = level0_vertex_image(cs);
    for (int i = 0; i < n; ++i) lc = subdivide_once(cs, lc, vimg);
    return lc;
}

VertexTables derive_vertices(const CompiledSpec& cs) {
    VertexTables vt;
    vt.level0_vertices = cs.level0.vertex_count;
    vt.level0_corners.resize(vt.level0_vertices);
    for (size_t t = 0; t < cs.level0.tile_corner_vertex.size(); ++t)
        for (size_t c = 0; c < cs.level0.tile_corner_vertex[t].size(); ++c)
            vt.level0_corners[cs.level0.tile_corner_vertex[t][c]].push_back(
                {static_cast<int>(t), static_cast<int>(c)});
    LeveledComplex l0 = level_complex(cs, 0);
    LeveledComplex l1 = level_complex(cs, 1);
    vt.level1_vertices = static_cast<int>(l1.vertices.size());
    vt.euler0 = l0.euler();
    vt.euler1 = l1.euler();
    if (vt.euler0 != 2 || vt.euler1 != 2) throw std::runtime_error("non-spherical complex");
    vt.vertex_map = level0_vertex_image(cs);
    return vt;
}

std::string canonical_form(const CompiledSpec& cs, const LeveledComplex& lc) {
    (void)cs;
    std::string best;
    for (size_t seed = 0; seed < lc.tiles.size(); ++seed) {
        std::vector<int> tile_id(lc.tiles.size(), -1), edge_id(lc.edges.size(), -1),
            vert_id(lc.vertices.size(), -1);
        int nt = 0, ne = 0, nv = 0;
        std::deque<int> q;
        tile_id[seed] = nt++;
        q.push_back(static_cast<int>(seed));
        std::vector<int> order{static_cast<int>(seed)};
        while (!q.empty()) {
            int t = q.front();
            q.pop_front();
            for (size_t m = 0; m < lc.tiles[t].side_edge.size(); ++m) {
                int e = lc.tiles[t].side_edge[m];
                if (edge_id[e] == -1) edge_id[e] = ne++;
                int cv = lc.corner_vertex(t, static_cast<int>(m));
                if (vert_id[cv] == -1) vert_id[cv] = nv++;
                for (auto [t2, m2] : lc.edges[e].slots)
                    if (tile_id[t2] == -1) {
                        tile_id[t2] = nt++;
                        order.push_back(t2);
                        q.push_back(t2);
                    }
            }
        }
        if (static_cast<size_t>(nt) != lc.tiles.size()) continue;  // disconnected: skip seed
        std::ostringstream os;
        for (int t : order) {
            os << "T" << lc.tiles[t].type << "[";
            for (size_t m = 0; m < lc.tiles[t].side_edge.size(); ++m) {
                int e = lc.tiles[t].side_edge[m];
                os << "e" << edge_id[e] << ":" << lc.edges[e].type << ":"
                   << vert_id[lc.corner_vertex(t, static_cast<int>(m))] << ",";
            }
            os << "]";
        }
        std::string s = os.str();
        if (best.empty() || s < best) best = s;
    }
    return best;
}

}  // namespace fsr
