#include "fsr/model.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fsr {

const EdgeTypeDef* FsrSpec::edge(const std::string& id) const {
    for (const auto& e : edge_types)
        if (e.id == id) return &e;
    return nullptr;
}

const TileTypeDef* FsrSpec::tile(const std::string& id) const {
    for (const auto& t : tile_types)
        if (t.id == id) return &t;
    return nullptr;
}

int FsrSpec::edge_index(const std::string& id) const {
    for (size_t i = 0; i < edge_types.size(); ++i)
        if (edge_types[i].id == id) return static_cast<int>(i);
    return -1;
}

int FsrSpec::tile_index(const std::string& id) const {
    for (size_t i = 0; i < tile_types.size(); ++i)
        if (tile_types[i].id == id) return static_cast<int>(i);
    return -1;
}

void FsrSpec::sort_by_id() {
    std::sort(edge_types.begin(), edge_types.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
    std::sort(tile_types.begin(), tile_types.end(),
              [](const auto& a, const auto& b) { return a.id < b.id; });
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    if (ok()) {
        os << "valid, degree " << degree;
        if (!orientation_consistent) os << ", orientation flag inconsistent";
    } else {
        os << issues.size() << " issue(s):";
        for (const auto& i : issues) os << "\n  [" << i.where << "] " << i.what;
    }
    for (const auto& w : warnings) os << "\n  warning: " << w;
    return os.str();
}

int Level0Info::euler() const { return vertex_count - edge_count + tile_count; }

bool MarkedSet::contains(int v) const {
    return std::binary_search(points.begin(), points.end(), v);
}

namespace {

struct Uf {
    std::vector<int> p;
    explicit Uf(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

struct Ctx {
    const FsrSpec& spec;
    ValidationReport& rep;
    void issue(const std::string& where, const std::string& what) {
        rep.issues.push_back({where, what});
    }
};

Level0Info build_level0(const FsrSpec& spec, Ctx* ctx) {
    Level0Info info;
    int ne = static_cast<int>(spec.edge_types.size());
    info.edge_count = ne;
    info.tile_count = static_cast<int>(spec.tile_types.size());
    info.edge_slots.resize(ne);

    Uf uf(2 * ne);  // endpoints: 2*e tail, 2*e+1 head
    for (size_t ti = 0; ti < spec.tile_types.size(); ++ti) {
        const auto& t = spec.tile_types[ti];
        int n = t.arity();
        for (int c = 0; c < n; ++c) {
            int side_prev = (c - 1 + n) % n;
            int e_near = spec.edge_index(t.boundary[c].id);
            int e_far = spec.edge_index(t.boundary[side_prev].id);
            if (e_near < 0 || e_far < 0) continue;  // dangling refs reported elsewhere
            int near_pt = 2 * e_near + (t.boundary[c].dir > 0 ? 0 : 1);
            int far_pt = 2 * e_far + (t.boundary[side_prev].dir > 0 ? 1 : 0);
            uf.unite(near_pt, far_pt);
        }
        for (int s = 0; s < n; ++s) {
            int ei = spec.edge_index(t.boundary[s].id);
            if (ei >= 0) info.edge_slots[ei].push_back({static_cast<int>(ti), s});
        }
    }
    std::map<int, int> classes;
    for (int p = 0; p < 2 * ne; ++p) {
        int r = uf.find(p);
        if (!classes.count(r)) classes[r] = static_cast<int>(classes.size());
    }
    info.vertex_count = static_cast<int>(classes.size());
    info.edge_endpoints.resize(ne);
    for (int e = 0; e < ne; ++e)
        info.edge_endpoints[e] = {classes[uf.find(2 * e)], classes[uf.find(2 * e + 1)]};
    info.tile_corner_vertex.resize(spec.tile_types.size());
    for (size_t ti = 0; ti < spec.tile_types.size(); ++ti) {
        const auto& t = spec.tile_types[ti];
        for (int c = 0; c < t.arity(); ++c) {
            int ei = spec.edge_index(t.boundary[c].id);
            if (ei < 0) {
                info.tile_corner_vertex[ti].push_back(-1);
                continue;
            }
            int near_pt = 2 * ei + (t.boundary[c].dir > 0 ? 0 : 1);
            info.tile_corner_vertex[ti].push_back(classes[uf.find(near_pt)]);
        }
    }
    (void)ctx;
    return info;
}

// Compile one chart, reporting issues. Returns nullopt if too broken to use.
std::optional<CompiledChart> compile_chart(const FsrSpec& spec, const Level0Info& l0,
                                           size_t tile_i, Ctx& ctx) {
    const TileTypeDef& tile = spec.tile_types[tile_i];
    const std::string W = "tile " + tile.id;
    CompiledChart cc;
    cc.vertices = tile.chart.vertices;
    cc.subedges = tile.chart.subedges;
    cc.subtiles = tile.chart.subtiles;
    bool usable = true;

    for (size_t i = 0; i < cc.vertices.size(); ++i)
        if (!cc.vtx_index.emplace(cc.vertices[i].id, static_cast<int>(i)).second) {
            ctx.issue(W, "duplicate chart vertex id " + cc.vertices[i].id);
            usable = false;
        }
    for (size_t i = 0; i < cc.subedges.size(); ++i)
        if (!cc.sub_index.emplace(cc.subedges[i].id, static_cast<int>(i)).second) {
            ctx.issue(W, "duplicate subedge id " + cc.subedges[i].id);
            usable = false;
        }
    for (size_t i = 0; i < cc.subtiles.size(); ++i)
        if (!cc.subtile_index.emplace(cc.subtiles[i].id, static_cast<int>(i)).second) {
            ctx.issue(W, "duplicate subtile id " + cc.subtiles[i].id);
            usable = false;
        }
    for (const auto& se : cc.subedges)
        if (!cc.vtx_index.count(se.from) || !cc.vtx_index.count(se.to)) {
            ctx.issue(W, "subedge " + se.id + " references unknown vertex");
            usable = false;
        }
    for (const auto& st : cc.subtiles) {
        if (spec.tile_index(st.type) < 0) {
            ctx.issue(W, "subtile " + st.id + " has unknown image type " + st.type);
            usable = false;
        }
        for (const auto& b : st.boundary)
            if (!cc.sub_index.count(b.id)) {
                ctx.issue(W, "subtile " + st.id + " references unknown subedge " + b.id);
                usable = false;
            }
    }
    if (!usable) return std::nullopt;

    int n = tile.arity();
    // Locate corners and side points.
    std::vector<int> corner_vtx(n, -1);
    std::map<std::pair<int, int>, int> side_pt;  // (side, pos) -> vertex
    for (size_t i = 0; i < cc.vertices.size(); ++i) {
        const auto& v = cc.vertices[i];
        if (v.kind == ChartVertex::Corner) {
            if (v.side < 0 || v.side >= n)
                ctx.issue(W, "corner index out of range at vertex " + v.id);
            else if (corner_vtx[v.side] != -1)
                ctx.issue(W, "duplicate corner " + std::to_string(v.side));
            else
                corner_vtx[v.side] = static_cast<int>(i);
        } else if (v.kind == ChartVertex::SidePoint) {
            if (v.side < 0 || v.side >= n)
                ctx.issue(W, "side index out of range at vertex " + v.id);
            else if (!side_pt.emplace(std::make_pair(v.side, v.pos), static_cast<int>(i)).second)
                ctx.issue(W, "duplicate side point " + v.id);
        }
    }
    for (int c = 0; c < n; ++c)
        if (corner_vtx[c] < 0) {
            ctx.issue(W, "missing corner " + std::to_string(c));
            return std::nullopt;
        }

    // Incidences from subtile boundaries; also closed-walk check.
    cc.subedge_incidences.resize(cc.subedges.size());
    for (size_t si = 0; si < cc.subtiles.size(); ++si) {
        const auto& st = cc.subtiles[si];
        int len = static_cast<int>(st.boundary.size());
        const TileTypeDef* img = spec.tile(st.type);
        if (len != img->arity())
            ctx.issue(W, "subtile " + st.id + " boundary length " + std::to_string(len) +
                             " != arity of image type " + st.type);
        for (int a = 0; a < len; ++a) {
            int se = cc.sub_index.at(st.boundary[a].id);
            cc.subedge_incidences[se].push_back({static_cast<int>(si), a, st.boundary[a].dir});
            // endpoint chaining
            const auto& cur = cc.subedges[se];
            int cur_end = cc.vtx_index.at(st.boundary[a].dir > 0 ? cur.to : cur.from);
            const auto& nxt = cc.subedges[cc.sub_index.at(st.boundary[(a + 1) % len].id)];
            int nxt_start =
                cc.vtx_index.at(st.boundary[(a + 1) % len].dir > 0 ? nxt.from : nxt.to);
            if (cur_end != nxt_start)
                ctx.issue(W, "subtile " + st.id + " boundary not a closed walk at position " +
                                 std::to_string(a));
        }
    }

    // Boundary status: subedges with exactly one incidence.
    cc.boundary_side.assign(cc.subedges.size(), -1);
    cc.boundary_pos.assign(cc.subedges.size(), -1);
    for (size_t se = 0; se < cc.subedges.size(); ++se) {
        size_t k = cc.subedge_incidences[se].size();
        if (k != 1 && k != 2)
            ctx.issue(W, "subedge " + cc.subedges[se].id + " has " + std::to_string(k) +
                             " subtile incidences (expected 1 on the boundary, 2 inside)");
        if (k == 2) {
            const auto& inc = cc.subedge_incidences[se];
            if (inc[0].dir == inc[1].dir)
                ctx.issue(W, "interior subedge " + cc.subedges[se].id +
                                 " traversed twice in the same direction");
        }
    }

    // Side sequences: the polygon boundary is the chain of once-incident
    // subedges followed in their traversal direction (the unique incident
    // subtile walks the boundary in the polygon's ccw orientation). Chain
    // them starting at corner 0 and match the expected stops.
    cc.side_seq.resize(n);
    {
        std::map<int, std::pair<int, Dir>> outgoing;  // start vertex -> (subedge, dir)
        int boundary_count = 0;
        bool chain_ok = true;
        for (size_t se = 0; se < cc.subedges.size(); ++se) {
            if (cc.subedge_incidences[se].size() != 1) continue;
            boundary_count++;
            Dir d = cc.subedge_incidences[se][0].dir;
            int start = cc.vtx_index.at(d > 0 ? cc.subedges[se].from : cc.subedges[se].to);
            if (!outgoing.emplace(start, std::make_pair(static_cast<int>(se), d)).second) {
                ctx.issue(W, "two boundary subedges leave chart vertex " +
                                 cc.vertices[start].id);
                chain_ok = false;
            }
        }
        int expected = 0;
        std::vector<int> side_len(n);
        for (int i = 0; i < n && chain_ok; ++i) {
            const EdgeTypeDef* e = spec.edge(tile.boundary[i].id);
            if (!e) {
                ctx.issue(W, "side " + std::to_string(i) + " has unknown edge type");
                return std::nullopt;
            }
            side_len[i] = static_cast<int>(e->subdivision.size());
            expected += side_len[i];
        }
        if (chain_ok && boundary_count != expected) {
            ctx.issue(W, "polygon boundary has " + std::to_string(boundary_count) +
                             " subedges, the side subdivisions demand " +
                             std::to_string(expected));
            chain_ok = false;
        }
        if (chain_ok) {
            int cur = corner_vtx[0];
            for (int i = 0; i < n && chain_ok; ++i) {
                if (cur != corner_vtx[i]) {
                    ctx.issue(W, "side " + std::to_string(i) + " does not start at corner " +
                                     std::to_string(i));
                    chain_ok = false;
                    break;
                }
                for (int j = 0; j < side_len[i] && chain_ok; ++j) {
                    auto it = outgoing.find(cur);
                    if (it == outgoing.end()) {
                        ctx.issue(W, "polygon boundary chain breaks on side " +
                                         std::to_string(i));
                        chain_ok = false;
                        break;
                    }
                    auto [se, d] = it->second;
                    cc.side_seq[i].push_back({se, d});
                    cc.boundary_side[se] = i;
                    cc.boundary_pos[se] = j;
                    cur = cc.vtx_index.at(d > 0 ? cc.subedges[se].to : cc.subedges[se].from);
                    if (j + 1 < side_len[i]) {
                        auto sp = side_pt.find({i, j + 1});
                        if (sp == side_pt.end() || sp->second != cur) {
                            ctx.issue(W, "side " + std::to_string(i) + " position " +
                                             std::to_string(j + 1) +
                                             " is not the declared side point");
                            chain_ok = false;
                        }
                    }
                }
            }
            if (chain_ok && cur != corner_vtx[0])
                ctx.issue(W, "polygon boundary chain does not close up");
        }
    }
    // Every once-incident subedge must lie on a side.
    for (size_t se = 0; se < cc.subedges.size(); ++se)
        if (cc.subedge_incidences[se].size() == 1 && cc.boundary_side[se] < 0)
            ctx.issue(W, "subedge " + cc.subedges[se].id +
                             " has one incidence but is not on the polygon boundary");

    // Euler and connectivity (disk condition).
    {
        int V = static_cast<int>(cc.vertices.size());
        int E = static_cast<int>(cc.subedges.size());
        int F = static_cast<int>(cc.subtiles.size());
        if (V - E + F != 1)
            ctx.issue(W, "chart Euler count V-E+F = " + std::to_string(V - E + F) + " != 1");
        Uf uf(V);
        for (const auto& se : cc.subedges)
            uf.unite(cc.vtx_index.at(se.from), cc.vtx_index.at(se.to));
        std::set<int> comps;
        for (int v = 0; v < V; ++v) comps.insert(uf.find(v));
        if (comps.size() != 1) ctx.issue(W, "chart is not connected");
    }

    const Dir sigma = spec.orientation == Orientation::Preserving ? 1 : -1;

    // Image maps per subtile and subedge-type consistency.
    cc.subtile_image_type.resize(cc.subtiles.size());
    cc.subtile_side_image.resize(cc.subtiles.size());
    cc.subedge_image_type.assign(cc.subedges.size(), -1);
    cc.subedge_image_dir.assign(cc.subedges.size(), 1);
    for (size_t si = 0; si < cc.subtiles.size(); ++si) {
        const auto& st = cc.subtiles[si];
        const TileTypeDef* img = spec.tile(st.type);
        int ni = img->arity();
        cc.subtile_image_type[si] = spec.tile_index(st.type);
        cc.subtile_side_image[si].resize(st.boundary.size());
        for (int a = 0; a < static_cast<int>(st.boundary.size()); ++a) {
            int s_img = sigma > 0 ? (st.offset + a) % ni : ((st.offset - a) % ni + ni) % ni;
            cc.subtile_side_image[si][a] = s_img;
            int se = cc.sub_index.at(st.boundary[a].id);
            int ety = spec.edge_index(img->boundary[s_img].id);
            Dir phi = st.boundary[a].dir * img->boundary[s_img].dir * sigma;
            if (cc.subedge_image_type[se] == -1) {
                cc.subedge_image_type[se] = ety;
                cc.subedge_image_dir[se] = phi;
            } else if (cc.subedge_image_type[se] != ety || cc.subedge_image_dir[se] != phi) {
                ctx.issue(W, "subedge " + cc.subedges[se].id +
                                 " has inconsistent images across incident subtiles");
            }
        }
    }

    // Boundary subedges must realize the side's subdivision sequence.
    for (int i = 0; i < n; ++i) {
        const EdgeTypeDef* e = spec.edge(tile.boundary[i].id);
        Dir eps = tile.boundary[i].dir;
        int m = static_cast<int>(e->subdivision.size());
        if (static_cast<int>(cc.side_seq[i].size()) != m) continue;  // reported already
        for (int j = 0; j < m; ++j) {
            auto [se, d] = cc.side_seq[i][j];
            int jj = eps > 0 ? j : m - 1 - j;
            int want_type = spec.edge_index(e->subdivision[jj].id);
            Dir want_dir = d * eps * e->subdivision[jj].dir;
            if (cc.subedge_image_type[se] != want_type)
                ctx.issue(W, "side " + std::to_string(i) + " segment " + std::to_string(j) +
                                 " has type " +
                                 (cc.subedge_image_type[se] >= 0
                                      ? spec.edge_types[cc.subedge_image_type[se]].id
                                      : std::string("?")) +
                                 ", subdivision of " + e->id + " demands " +
                                 e->subdivision[jj].id);
            else if (cc.subedge_image_dir[se] != want_dir)
                ctx.issue(W, "side " + std::to_string(i) + " segment " + std::to_string(j) +
                                 " maps with the wrong direction");
        }
    }

    // Vertex images: subtile corners map to image-tile corners.
    cc.vertex_image.assign(cc.vertices.size(), -1);
    auto set_vertex_image = [&](int v, int img_vtx, const std::string& what) {
        if (cc.vertex_image[v] == -1)
            cc.vertex_image[v] = img_vtx;
        else if (cc.vertex_image[v] != img_vtx)
            ctx.issue(W, "chart vertex " + cc.vertices[v].id +
                             " has inconsistent image vertices (" + what + ")");
    };
    for (size_t si = 0; si < cc.subtiles.size(); ++si) {
        const auto& st = cc.subtiles[si];
        const TileTypeDef* img = spec.tile(st.type);
        int ni = img->arity();
        for (int a = 0; a < static_cast<int>(st.boundary.size()); ++a) {
            int se = cc.sub_index.at(st.boundary[a].id);
            const auto& sed = cc.subedges[se];
            int start_v = cc.vtx_index.at(st.boundary[a].dir > 0 ? sed.from : sed.to);
            int s_img = cc.subtile_side_image[si][a];
            int corner_img = sigma > 0 ? s_img : (s_img + 1) % ni;
            int ti = spec.tile_index(st.type);
            set_vertex_image(start_v, l0.tile_corner_vertex[ti][corner_img],
                             "via subtile " + st.id);
        }
    }
    // Cross-check boundary vertices against the level-0 data.
    for (int c = 0; c < n; ++c) {
        int want = l0.tile_corner_vertex[tile_i][c];
        if (want >= 0 && cc.vertex_image[corner_vtx[c]] >= 0) {
            // image of the corner's vertex under f: corner c is a level-0
            // vertex v; its image must equal the level-1->level-0 projection
            // restricted to vertices. Derived below in the portrait; here we
            // only require the image is defined.
        }
    }
    // Side points: image from the edge subdivision junctions must agree.
    for (auto& [key, v] : side_pt) {
        auto [i, j] = key;
        const EdgeTypeDef* e = spec.edge(tile.boundary[i].id);
        if (!e) continue;
        int m = static_cast<int>(e->subdivision.size());
        Dir eps = tile.boundary[i].dir;
        if (j < 1 || j >= m) {
            ctx.issue(W, "side point (" + std::to_string(i) + "," + std::to_string(j) +
                             ") out of range (side has " + std::to_string(m) + " segments)");
            continue;
        }
        int jj = eps > 0 ? j : m - j;  // junction index along e's positive direction
        // junction jj sits between subdivision entries jj-1 and jj
        const auto& before = e->subdivision[jj - 1];
        const auto& after = e->subdivision[jj];
        int b_i = spec.edge_index(before.id), a_i = spec.edge_index(after.id);
        if (b_i < 0 || a_i < 0) continue;
        int img_b = before.dir > 0 ? l0.edge_endpoints[b_i].second : l0.edge_endpoints[b_i].first;
        int img_a = after.dir > 0 ? l0.edge_endpoints[a_i].first : l0.edge_endpoints[a_i].second;
        if (img_b != img_a)
            ctx.issue("edge " + e->id,
                      "subdivision entries " + std::to_string(jj - 1) + "," + std::to_string(jj) +
                          " do not share a junction vertex");
        set_vertex_image(v, img_b, "via junction of edge " + e->id);
    }
    for (size_t v = 0; v < cc.vertices.size(); ++v)
        if (cc.vertex_image[v] < 0)
            ctx.issue(W, "chart vertex " + cc.vertices[v].id + " image undetermined");

    return cc;
}

}  // namespace

ValidationReport validate_rule(const FsrSpec& spec) {
    ValidationReport rep;
    Ctx ctx{spec, rep};

    // Structural checks.
    {
        std::set<std::string> eids, tids;
        for (const auto& e : spec.edge_types) {
            if (!eids.insert(e.id).second) ctx.issue("edge " + e.id, "duplicate edge type id");
            if (e.subdivision.empty())
                ctx.issue("edge " + e.id, "empty subdivision sequence");
            for (const auto& s : e.subdivision)
                if (!spec.edge(s.id))
                    ctx.issue("edge " + e.id, "dangling reference to edge type " + s.id);
        }
        for (const auto& t : spec.tile_types) {
            if (!tids.insert(t.id).second) ctx.issue("tile " + t.id, "duplicate tile type id");
            if (t.boundary.empty()) ctx.issue("tile " + t.id, "empty boundary word");
            if (t.arity() == 1) rep.warnings.push_back("tile " + t.id + " is a monogon");
            for (const auto& s : t.boundary)
                if (!spec.edge(s.id))
                    ctx.issue("tile " + t.id, "dangling reference to edge type " + s.id);
        }
        if (spec.tile_types.empty()) ctx.issue("spec", "no tile types");
        if (spec.edge_types.empty()) ctx.issue("spec", "no edge types");
    }
    if (!rep.issues.empty()) return rep;

    // Closed-surface condition: each edge type in exactly two tile sides.
    Level0Info l0 = build_level0(spec, &ctx);
    for (size_t e = 0; e < spec.edge_types.size(); ++e)
        if (l0.edge_slots[e].size() != 2)
            ctx.issue("edge " + spec.edge_types[e].id,
                      "closed-surface condition: " + std::to_string(l0.edge_slots[e].size()) +
                          " side incidences (expected 2)");
    if (l0.euler() != 2)
        ctx.issue("spec", "level-0 Euler characteristic " + std::to_string(l0.euler()) + " != 2");

    // Charts.
    long total_subtiles = 0;
    std::vector<long> preimages(spec.tile_types.size(), 0);
    for (size_t ti = 0; ti < spec.tile_types.size(); ++ti) {
        auto cc = compile_chart(spec, l0, ti, ctx);
        if (cc) {
            total_subtiles += static_cast<long>(cc->subtiles.size());
            for (int im : cc->subtile_image_type)
                if (im >= 0) preimages[im]++;
        }
    }
    if (rep.issues.empty()) {
        long nt = static_cast<long>(spec.tile_types.size());
        if (total_subtiles % nt != 0)
            ctx.issue("spec", "total subtile count " + std::to_string(total_subtiles) +
                                  " not divisible by tile count");
        else {
            rep.degree = static_cast<int>(total_subtiles / nt);
            for (size_t t = 0; t < preimages.size(); ++t)
                if (preimages[t] != rep.degree)
                    ctx.issue("tile " + spec.tile_types[t].id,
                              "has " + std::to_string(preimages[t]) + " preimage subtiles, expected " +
                                  std::to_string(rep.degree));
            if (rep.degree == 1)
                rep.warnings.push_back("degenerate map: degree 1 (no critical points possible)");
        }
    }
    rep.orientation_consistent = rep.issues.empty();
    return rep;
}

CompiledSpec compile_rule(const FsrSpec& spec) {
    ValidationReport rep = validate_rule(spec);
    if (!rep.ok()) throw std::runtime_error("invalid finite subdivision rule: " + rep.summary());
    CompiledSpec cs;
    cs.spec = spec;
    cs.level0 = build_level0(spec, nullptr);
    cs.degree = rep.degree;
    ValidationReport scratch;
    Ctx ctx{cs.spec, scratch};
    for (size_t ti = 0; ti < spec.tile_types.size(); ++ti) {
        auto cc = compile_chart(cs.spec, cs.level0, ti, ctx);
        if (!cc) throw std::logic_error("chart compilation failed after validation");
        cs.charts.push_back(std::move(*cc));
    }
    if (!scratch.issues.empty())
        throw std::logic_error("chart compilation issues after validation: " +
                               scratch.summary());
    return cs;
}

Portrait critical_portrait(const CompiledSpec& cs) {
    const FsrSpec& spec = cs.spec;
    const Level0Info& l0 = cs.level0;
    Portrait p;
    p.degree = cs.degree;
    if (cs.degree == 1) p.warnings.push_back("degenerate map: degree 1");

    int nv = l0.vertex_count;
    // corner counts in S_R per level-0 vertex
    std::vector<int> corners0(nv, 0);
    for (const auto& tc : l0.tile_corner_vertex)
        for (int v : tc)
            if (v >= 0) corners0[v]++;

    // Level-1 vertices: level-0 vertices, edge junctions, chart interiors.
    // Count level-1 corners (subtile-corner incidences) at each and record
    // the image level-0 vertex.
    std::vector<int> corners1_at_l0(nv, 0);
    std::vector<int> image_of_l0(nv, -1);
    auto note_l0_image = [&](int v, int img) {
        if (image_of_l0[v] == -1)
            image_of_l0[v] = img;
        else if (image_of_l0[v] != img)
            throw std::logic_error("inconsistent vertex image at level-0 vertex");
    };

    struct JunctionKey {
        int edge, jj;
        bool operator<(const JunctionKey& o) const {
            return std::tie(edge, jj) < std::tie(o.edge, o.jj);
        }
    };
    std::map<JunctionKey, int> junction_corners;
    std::map<JunctionKey, int> junction_image;

    for (size_t ti = 0; ti < spec.tile_types.size(); ++ti) {
        const CompiledChart& cc = cs.charts[ti];
        const TileTypeDef& tile = spec.tile_types[ti];
        // subtile-corner incidences per chart vertex
        std::vector<int> corner_count(cc.vertices.size(), 0);
        for (size_t si = 0; si < cc.subtiles.size(); ++si) {
            const auto& st = cc.subtiles[si];
            for (int a = 0; a < static_cast<int>(st.boundary.size()); ++a) {
                int se = cc.sub_index.at(st.boundary[a].id);
                const auto& sed = cc.subedges[se];
                int start_v = cc.vtx_index.at(st.boundary[a].dir > 0 ? sed.from : sed.to);
                corner_count[start_v]++;
            }
        }
        for (size_t vi = 0; vi < cc.vertices.size(); ++vi) {
            const auto& v = cc.vertices[vi];
            if (v.kind == ChartVertex::Corner) {
                int l0v = l0.tile_corner_vertex[ti][v.side];
                corners1_at_l0[l0v] += corner_count[vi];
                note_l0_image(l0v, cc.vertex_image[vi]);
            } else if (v.kind == ChartVertex::SidePoint) {
                int ei = spec.edge_index(tile.boundary[v.side].id);
                const EdgeTypeDef* e = spec.edge(tile.boundary[v.side].id);
                int m = static_cast<int>(e->subdivision.size());
                int jj = tile.boundary[v.side].dir > 0 ? v.pos : m - v.pos;
                JunctionKey key{ei, jj};
                junction_corners[key] += corner_count[vi];
                junction_image[key] = cc.vertex_image[vi];
            }
            // interior vertices are handled in the degree pass below
        }
    }

    p.vertex_image = image_of_l0;
    p.local_degree.assign(nv, 1);
    for (int v = 0; v < nv; ++v) {
        int img = image_of_l0[v];
        if (img < 0) throw std::logic_error("level-0 vertex image missing");
        if (corners0[img] == 0 || corners1_at_l0[v] % corners0[img] != 0)
            throw std::logic_error("non-integral local degree at level-0 vertex");
        p.local_degree[v] = corners1_at_l0[v] / corners0[img];
    }

    // Assemble level-1 degree list and critical images.
    std::vector<int> crit_images;
    for (int v = 0; v < nv; ++v) {
        p.level1_degrees.push_back({"v" + std::to_string(v), p.local_degree[v]});
        if (p.local_degree[v] >= 2) {
            p.critical.push_back(v);
            crit_images.push_back(image_of_l0[v]);
        }
    }
    for (auto& [key, c] : junction_corners) {
        int img = junction_image[key];
        if (corners0[img] == 0 || c % corners0[img] != 0)
            throw std::logic_error("non-integral local degree at junction vertex");
        int deg = c / corners0[img];
        p.level1_degrees.push_back(
            {"j:" + spec.edge_types[key.edge].id + ":" + std::to_string(key.jj), deg});
        if (deg >= 2) crit_images.push_back(img);
    }
    // interior vertices again for degrees and critical images
    for (size_t ti = 0; ti < spec.tile_types.size(); ++ti) {
        const CompiledChart& cc = cs.charts[ti];
        std::vector<int> corner_count(cc.vertices.size(), 0);
        for (size_t si = 0; si < cc.subtiles.size(); ++si) {
            const auto& st = cc.subtiles[si];
            for (int a = 0; a < static_cast<int>(st.boundary.size()); ++a) {
                int se = cc.sub_index.at(st.boundary[a].id);
                const auto& sed = cc.subedges[se];
                corner_count[cc.vtx_index.at(st.boundary[a].dir > 0 ? sed.from : sed.to)]++;
            }
        }
        for (size_t vi = 0; vi < cc.vertices.size(); ++vi) {
            if (cc.vertices[vi].kind != ChartVertex::Interior) continue;
            int img = cc.vertex_image[vi];
            int deg = corner_count[vi] / corners0[img];
            p.level1_degrees.push_back(
                {spec.tile_types[ti].id + ":" + cc.vertices[vi].id, deg});
            if (deg >= 2) crit_images.push_back(img);
        }
    }

    // Riemann-Hurwitz.
    long rh = 0;
    for (const auto& [label, deg] : p.level1_degrees) rh += deg - 1;
    if (rh != 2L * cs.degree - 2)
        throw std::logic_error("Riemann-Hurwitz violated: sum(deg-1) = " + std::to_string(rh) +
                               ", expected " + std::to_string(2 * cs.degree - 2));

    // Postcritical set: forward orbits of critical images.
    std::set<int> post;
    for (int x : crit_images) {
        int cur = x;
        while (!post.count(cur)) {
            post.insert(cur);
            cur = p.vertex_image[cur];
        }
    }
    p.postcritical.assign(post.begin(), post.end());

    // Fatou points: orbit meets a periodic critical level-0 vertex.
    std::set<int> periodic_critical;
    for (int v : p.critical) {
        // v periodic under vertex_image?
        int cur = v;
        std::set<int> seen;
        while (!seen.count(cur)) {
            seen.insert(cur);
            cur = p.vertex_image[cur];
        }
        // cur is on the cycle; check whether v itself is on it
        std::set<int> cycle;
        int c = cur;
        do {
            cycle.insert(c);
            c = p.vertex_image[c];
        } while (c != cur);
        if (cycle.count(v)) periodic_critical.insert(v);
    }
    p.is_fatou.assign(nv, false);
    for (int v = 0; v < nv; ++v) {
        int cur = v;
        std::set<int> seen;
        while (!seen.count(cur)) {
            if (periodic_critical.count(cur)) {
                p.is_fatou[v] = true;
                break;
            }
            seen.insert(cur);
            cur = p.vertex_image[cur];
        }
        if (periodic_critical.count(cur)) p.is_fatou[v] = true;
    }
    return p;
}

MarkedSet marked_closure(const CompiledSpec& cs, const std::vector<int>& seed) {
    Portrait p = critical_portrait(cs);
    std::set<int> pts(p.postcritical.begin(), p.postcritical.end());
    for (int s : seed) {
        if (s < 0 || s >= cs.level0.vertex_count)
            throw std::invalid_argument("seed not a vertex: " + std::to_string(s));
        pts.insert(s);
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<int> next = pts;
        for (int v : pts)
            if (!next.count(p.vertex_image[v])) {
                next.insert(p.vertex_image[v]);
                grew = true;
            }
        pts = next;
    }
    MarkedSet m;
    m.points.assign(pts.begin(), pts.end());
    for (int v : m.points) m.fatou.push_back(p.is_fatou[v]);
    return m;
}

}  // namespace fsr
