#include "fsr/format.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace fsr {

namespace {

struct LineLexer {
    std::vector<std::string> lines;
    int lineno = 0;  // 1-based after next()

    explicit LineLexer(const std::string& text) {
        std::istringstream is(text);
        std::string l;
        while (std::getline(is, l)) lines.push_back(l);
    }
    // next non-empty, comment-stripped line; empty string at EOF
    std::vector<std::string> next() {
        while (lineno < static_cast<int>(lines.size())) {
            std::string l = lines[lineno++];
            auto hash = l.find('#');
            if (hash != std::string::npos) l = l.substr(0, hash);
            std::istringstream is(l);
            std::vector<std::string> toks;
            std::string t;
            while (is >> t) toks.push_back(t);
            if (!toks.empty()) return toks;
        }
        return {};
    }
};

DirectedRef parse_ref(const std::string& tok, int line) {
    if (tok.size() < 2) throw ParseError("expected <id><+|-> token, got '" + tok + "'", line, 1);
    char s = tok.back();
    if (s != '+' && s != '-')
        throw ParseError("expected direction sign on '" + tok + "'", line, 1);
    return {tok.substr(0, tok.size() - 1), s == '+' ? 1 : -1};
}

std::string ref_str(const DirectedRef& r) { return r.id + (r.dir > 0 ? "+" : "-"); }

}  // namespace

FsrSpec parse_fsr(const std::string& text) {
    LineLexer lx(text);
    FsrSpec spec;
    auto toks = lx.next();
    if (toks.empty() || toks[0] != "fsr")
        throw ParseError("expected 'fsr' header", std::max(1, lx.lineno), 1);
    if (toks.size() != 2) throw ParseError("expected 'fsr <name>'", lx.lineno, 1);
    spec.name = toks[1];

    toks = lx.next();
    if (toks.size() != 2 || toks[0] != "orientation" ||
        (toks[1] != "preserving" && toks[1] != "reversing"))
        throw ParseError("expected 'orientation preserving|reversing'", std::max(1, lx.lineno), 1);
    spec.orientation = toks[1] == "preserving" ? Orientation::Preserving : Orientation::Reversing;

    std::set<std::string> seen_ids;
    while (!(toks = lx.next()).empty()) {
        if (toks[0] == "edge") {
            if (toks.size() < 4 || toks[2] != "->")
                throw ParseError("expected 'edge <id> -> <id><+|-> ...'", lx.lineno, 1);
            EdgeTypeDef e;
            e.id = toks[1];
            if (!seen_ids.insert("e:" + e.id).second)
                throw ParseError("duplicate edge id " + e.id, lx.lineno, 1);
            for (size_t i = 3; i < toks.size(); ++i) e.subdivision.push_back(parse_ref(toks[i], lx.lineno));
            spec.edge_types.push_back(std::move(e));
        } else if (toks[0] == "tile") {
            if (toks.size() < 4 || toks[2] != "sides" || toks.back() != "{")
                throw ParseError("expected 'tile <id> sides <edge><+|-> ... {'", lx.lineno, 1);
            TileTypeDef t;
            t.id = toks[1];
            if (!seen_ids.insert("t:" + t.id).second)
                throw ParseError("duplicate tile id " + t.id, lx.lineno, 1);
            for (size_t i = 3; i + 1 < toks.size(); ++i)
                t.boundary.push_back(parse_ref(toks[i], lx.lineno));
            bool closed = false;
            while (!(toks = lx.next()).empty()) {
                if (toks[0] == "}") {
                    closed = true;
                    break;
                }
                if (toks[0] == "vertex") {
                    ChartVertex v;
                    if (toks.size() < 3) throw ParseError("bad vertex line", lx.lineno, 1);
                    v.id = toks[1];
                    if (toks[2] == "corner" && toks.size() == 4) {
                        v.kind = ChartVertex::Corner;
                        v.side = std::stoi(toks[3]);
                    } else if (toks[2] == "side" && toks.size() == 6 && toks[4] == "pos") {
                        v.kind = ChartVertex::SidePoint;
                        v.side = std::stoi(toks[3]);
                        v.pos = std::stoi(toks[5]);
                    } else if (toks[2] == "interior" && toks.size() == 3) {
                        v.kind = ChartVertex::Interior;
                    } else {
                        throw ParseError("bad vertex declaration", lx.lineno, 1);
                    }
                    t.chart.vertices.push_back(std::move(v));
                } else if (toks[0] == "subedge") {
                    if (toks.size() != 4) throw ParseError("bad subedge line", lx.lineno, 1);
                    t.chart.subedges.push_back({toks[1], toks[2], toks[3]});
                } else if (toks[0] == "subtile") {
                    if (toks.size() < 8 || toks[2] != "type" || toks[4] != "offset" ||
                        toks[6] != "boundary")
                        throw ParseError(
                            "expected 'subtile <id> type <tile> offset <k> boundary ...'",
                            lx.lineno, 1);
                    ChartSubtile st;
                    st.id = toks[1];
                    st.type = toks[3];
                    st.offset = std::stoi(toks[5]);
                    for (size_t i = 7; i < toks.size(); ++i)
                        st.boundary.push_back(parse_ref(toks[i], lx.lineno));
                    t.chart.subtiles.push_back(std::move(st));
                } else {
                    throw ParseError("unexpected token '" + toks[0] + "' in tile block", lx.lineno,
                                     1);
                }
            }
            if (!closed) throw ParseError("unterminated tile block", lx.lineno, 1);
            spec.tile_types.push_back(std::move(t));
        } else {
            throw ParseError("unexpected token '" + toks[0] + "'", lx.lineno, 1);
        }
    }
    spec.sort_by_id();

    // dangling references are parse errors with position-free reporting here
    for (const auto& e : spec.edge_types)
        for (const auto& s : e.subdivision)
            if (!spec.edge(s.id))
                throw ParseError("dangling reference to edge '" + s.id + "' in edge " + e.id, 0, 0);
    for (const auto& t : spec.tile_types) {
        for (const auto& s : t.boundary)
            if (!spec.edge(s.id))
                throw ParseError("dangling reference to edge '" + s.id + "' in tile " + t.id, 0, 0);
        for (const auto& st : t.chart.subtiles)
            if (!spec.tile(st.type))
                throw ParseError("dangling reference to tile '" + st.type + "' in subtile " + st.id,
                                 0, 0);
    }
    return spec;
}

std::string serialize_fsr(const FsrSpec& spec_in) {
    FsrSpec spec = spec_in;
    spec.sort_by_id();
    std::ostringstream os;
    os << "fsr " << spec.name << "\n";
    os << "orientation "
       << (spec.orientation == Orientation::Preserving ? "preserving" : "reversing") << "\n";
    for (const auto& e : spec.edge_types) {
        os << "edge " << e.id << " ->";
        for (const auto& s : e.subdivision) os << " " << ref_str(s);
        os << "\n";
    }
    for (const auto& t : spec.tile_types) {
        os << "tile " << t.id << " sides";
        for (const auto& s : t.boundary) os << " " << ref_str(s);
        os << " {\n";
        auto vs = t.chart.vertices;
        std::sort(vs.begin(), vs.end(),
                  [](const auto& a, const auto& b) { return a.id < b.id; });
        for (const auto& v : vs) {
            os << "  vertex " << v.id << " ";
            if (v.kind == ChartVertex::Corner)
                os << "corner " << v.side;
            else if (v.kind == ChartVertex::SidePoint)
                os << "side " << v.side << " pos " << v.pos;
            else
                os << "interior";
            os << "\n";
        }
        auto ses = t.chart.subedges;
        std::sort(ses.begin(), ses.end(),
                  [](const auto& a, const auto& b) { return a.id < b.id; });
        for (const auto& se : ses)
            os << "  subedge " << se.id << " " << se.from << " " << se.to << "\n";
        auto sts = t.chart.subtiles;
        std::sort(sts.begin(), sts.end(),
                  [](const auto& a, const auto& b) { return a.id < b.id; });
        for (const auto& st : sts) {
            os << "  subtile " << st.id << " type " << st.type << " offset " << st.offset
               << " boundary";
            for (const auto& b : st.boundary) os << " " << ref_str(b);
            os << "\n";
        }
        os << "}\n";
    }
    return os.str();
}

namespace {

nlohmann::json ref_json(const DirectedRef& r) {
    return nlohmann::json{{"id", r.id}, {"dir", r.dir > 0 ? "+" : "-"}};
}

DirectedRef ref_from_json(const nlohmann::json& j) {
    return {j.at("id").get<std::string>(), j.at("dir").get<std::string>() == "+" ? 1 : -1};
}

}  // namespace

std::string fsr_to_json(const FsrSpec& spec_in) {
    FsrSpec spec = spec_in;
    spec.sort_by_id();
    nlohmann::json j;
    j["fsr"] = spec.name;
    j["orientation"] = spec.orientation == Orientation::Preserving ? "preserving" : "reversing";
    j["edges"] = nlohmann::json::array();
    for (const auto& e : spec.edge_types) {
        nlohmann::json je{{"id", e.id}, {"subdivision", nlohmann::json::array()}};
        for (const auto& s : e.subdivision) je["subdivision"].push_back(ref_json(s));
        j["edges"].push_back(je);
    }
    j["tiles"] = nlohmann::json::array();
    for (const auto& t : spec.tile_types) {
        nlohmann::json jt{{"id", t.id}, {"sides", nlohmann::json::array()}};
        for (const auto& s : t.boundary) jt["sides"].push_back(ref_json(s));
        jt["vertices"] = nlohmann::json::array();
        for (const auto& v : t.chart.vertices) {
            nlohmann::json jv{{"id", v.id}};
            if (v.kind == ChartVertex::Corner) {
                jv["kind"] = "corner";
                jv["side"] = v.side;
            } else if (v.kind == ChartVertex::SidePoint) {
                jv["kind"] = "side";
                jv["side"] = v.side;
                jv["pos"] = v.pos;
            } else {
                jv["kind"] = "interior";
            }
            jt["vertices"].push_back(jv);
        }
        jt["subedges"] = nlohmann::json::array();
        for (const auto& se : t.chart.subedges)
            jt["subedges"].push_back({{"id", se.id}, {"from", se.from}, {"to", se.to}});
        jt["subtiles"] = nlohmann::json::array();
        for (const auto& st : t.chart.subtiles) {
            nlohmann::json js{{"id", st.id},
                              {"type", st.type},
                              {"offset", st.offset},
                              {"boundary", nlohmann::json::array()}};
            for (const auto& b : st.boundary) js["boundary"].push_back(ref_json(b));
            jt["subtiles"].push_back(js);
        }
        j["tiles"].push_back(jt);
    }
    return j.dump(2) + "\n";
}

FsrSpec fsr_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FsrSpec spec;
    spec.name = j.at("fsr").get<std::string>();
    spec.orientation = j.at("orientation").get<std::string>() == "preserving"
                           ? Orientation::Preserving
                           : Orientation::Reversing;
    for (const auto& je : j.at("edges")) {
        EdgeTypeDef e;
        e.id = je.at("id").get<std::string>();
        for (const auto& s : je.at("subdivision")) e.subdivision.push_back(ref_from_json(s));
        spec.edge_types.push_back(std::move(e));
    }
    for (const auto& jt : j.at("tiles")) {
        TileTypeDef t;
        t.id = jt.at("id").get<std::string>();
        for (const auto& s : jt.at("sides")) t.boundary.push_back(ref_from_json(s));
        for (const auto& jv : jt.at("vertices")) {
            ChartVertex v;
            v.id = jv.at("id").get<std::string>();
            std::string k = jv.at("kind").get<std::string>();
            if (k == "corner") {
                v.kind = ChartVertex::Corner;
                v.side = jv.at("side").get<int>();
            } else if (k == "side") {
                v.kind = ChartVertex::SidePoint;
                v.side = jv.at("side").get<int>();
                v.pos = jv.at("pos").get<int>();
            } else {
                v.kind = ChartVertex::Interior;
            }
            t.chart.vertices.push_back(std::move(v));
        }
        for (const auto& js : jt.at("subedges"))
            t.chart.subedges.push_back({js.at("id").get<std::string>(),
                                        js.at("from").get<std::string>(),
                                        js.at("to").get<std::string>()});
        for (const auto& js : jt.at("subtiles")) {
            ChartSubtile st;
            st.id = js.at("id").get<std::string>();
            st.type = js.at("type").get<std::string>();
            st.offset = js.at("offset").get<int>();
            for (const auto& b : js.at("boundary")) st.boundary.push_back(ref_from_json(b));
            t.chart.subtiles.push_back(std::move(st));
        }
        spec.tile_types.push_back(std::move(t));
    }
    spec.sort_by_id();
    return spec;
}

PlanarGraph parse_planar_graph(const std::string& text) {
    LineLexer lx(text);
    std::vector<std::pair<std::string, std::vector<std::string>>> rotations;
    std::vector<std::pair<std::string, std::string>> pairs;
    std::vector<std::string> toks;
    while (!(toks = lx.next()).empty()) {
        if (toks[0] == "vertex") {
            if (toks.size() < 2 || toks[1].back() != ':')
                throw ParseError("expected 'vertex <id>: <dart> ...'", lx.lineno, 1);
            std::string name = toks[1].substr(0, toks[1].size() - 1);
            std::vector<std::string> ds(toks.begin() + 2, toks.end());
            rotations.push_back({name, ds});
        } else if (toks[0] == "pair") {
            if (toks.size() != 3) throw ParseError("expected 'pair <dart> <dart>'", lx.lineno, 1);
            pairs.push_back({toks[1], toks[2]});
        } else {
            throw ParseError("unexpected token '" + toks[0] + "'", lx.lineno, 1);
        }
    }
    if (rotations.empty()) throw ParseError("empty planar graph", 1, 1);
    return PlanarGraph::from_rotation(rotations, pairs);
}

std::string serialize_planar_graph(const PlanarGraph& g) {
    std::ostringstream os;
    for (int v = 0; v < g.vertex_count(); ++v) {
        os << "vertex " << g.vertex_name(v) << ":";
        for (int d : g.rotation(v)) os << " " << g.dart(d).id;
        os << "\n";
    }
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int d = 0; d < g.dart_count(); ++d) {
        const std::string& a = g.dart(d).id;
        const std::string& b = g.dart(g.dart(d).reverse).id;
        if (a < b) pairs.push_back({a, b});
    }
    std::sort(pairs.begin(), pairs.end());
    for (const auto& [a, b] : pairs) os << "pair " << a << " " << b << "\n";
    return os.str();
}

std::string emit_dot(const Digraph& g, const DotOptions& opt) {
    std::ostringstream os;
    os << "digraph " << opt.name << " {\n";
    std::vector<int> order(g.node_count());
    for (int i = 0; i < g.node_count(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return g.label(a) < g.label(b); });
    if (opt.cluster_sccs) {
        for (int c = 0; c < g.scc_count(); ++c) {
            os << "  subgraph cluster_" << c << " {\n";
            std::vector<std::string> ls;
            for (int v : g.scc_nodes(c)) ls.push_back(g.label(v));
            std::sort(ls.begin(), ls.end());
            for (const auto& l : ls) os << "    \"" << l << "\";\n";
            os << "  }\n";
        }
    } else {
        for (int v : order) os << "  \"" << g.label(v) << "\";\n";
    }
    for (int v : order) {
        std::vector<std::pair<std::string, long>> outs;
        for (auto [w, m] : g.out_arcs(v)) outs.push_back({g.label(w), m});
        std::sort(outs.begin(), outs.end());
        for (const auto& [w, m] : outs) {
            os << "  \"" << g.label(v) << "\" -> \"" << w << "\"";
            if (m > 1) os << " [label=\"x" << m << "\"]";
            os << ";\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string emit_dot(const PlanarGraph& g, const DotOptions& opt) {
    std::ostringstream os;
    os << "graph " << opt.name << " {\n";
    for (int v = 0; v < g.vertex_count(); ++v) os << "  \"" << g.vertex_name(v) << "\";\n";
    for (int d = 0; d < g.dart_count(); ++d) {
        if (d > g.dart(d).reverse) continue;
        os << "  \"" << g.vertex_name(g.dart(d).vertex) << "\" -- \""
           << g.vertex_name(g.dart(g.dart(d).reverse).vertex) << "\" [label=\"" << g.dart(d).id
           << "\"];\n";
    }
    os << "}\n";
    return os.str();
}


namespace {

std::string track_vertex_label(const TrainTrack& tt, const LeveledComplex& lc, int v) {
    const auto& vx = tt.vertices[v];
    std::ostringstream os;
    switch (vx.kind) {
        case TrainTrack::VKind::BoundaryPoint:
            os << "bp e" << vx.anchor_edge << " (on level-0 edge "
               << lc.edges[vx.anchor_edge].p0_edge << ")";
            break;
        case TrainTrack::VKind::Zip:
            os << "zip e" << vx.anchor_edge << " side " << vx.slot;
            break;
        case TrainTrack::VKind::StarCenter:
            os << "star tile " << vx.anchor_tile;
            break;
    }
    os << "\\ngates:";
    for (const auto& g : vx.gates) {
        os << " {";
        for (size_t i = 0; i < g.size(); ++i)
            os << (i ? "," : "") << "t" << g[i].first << "." << g[i].second;
        os << "}";
    }
    return os.str();
}

}  // namespace

std::string emit_dot(const TrainTrack& tt, const LeveledComplex& lc, const DotOptions& opt) {
    std::ostringstream os;
    os << "graph " << opt.name << " {\n";
    for (size_t v = 0; v < tt.vertices.size(); ++v)
        os << "  v" << v << " [label=\"" << track_vertex_label(tt, lc, static_cast<int>(v))
           << "\"];\n";
    for (size_t e = 0; e < tt.edges.size(); ++e) {
        const char* kind = tt.edges[e].kind == TrainTrack::EKind::BoneChord
                               ? "bone"
                               : (tt.edges[e].kind == TrainTrack::EKind::StarSpoke ? "spoke"
                                                                                   : "stub");
        os << "  v" << tt.edges[e].v[0] << " -- v" << tt.edges[e].v[1] << " [label=\"t"
           << static_cast<int>(e) << " " << kind << " in tile " << tt.edges[e].p0_tile
           << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string emit_svg(const CompiledSpec& cs, const TrainTrack& tt, const LeveledComplex& lc) {
    // lay out each level-0 tile as a regular polygon; boundary points placed
    // by their polygon position; interior vertices at the centroid of their
    // neighbors
    const double R = 80.0, GAP = 200.0, PAD = 100.0;
    size_t ntiles = cs.spec.tile_types.size();
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\""
       << PAD * 2 + GAP * static_cast<double>(ntiles) << "\" height=\"" << PAD * 2 + 2 * R
       << "\">\n";
    auto tile_center_x = [&](int t) { return PAD + GAP * (t + 0.5); };
    // polygon corners and edges
    for (size_t t = 0; t < ntiles; ++t) {
        int ar = cs.spec.tile_types[t].arity();
        os << "<polygon points=\"";
        for (int c = 0; c < ar; ++c) {
            double ang = 2 * 3.14159265358979 * c / ar - 1.5707963;
            os << tile_center_x(static_cast<int>(t)) + R * std::cos(ang) << ","
               << PAD + R + R * std::sin(ang) << " ";
        }
        os << "\" fill=\"none\" stroke=\"black\"/>\n";
    }
    // positions of track vertices
    auto bp_pos = [&](int v) -> std::pair<double, double> {
        const auto& vx = tt.vertices[v];
        int E = vx.anchor_edge;
        // place on the first slot side's tile boundary
        auto [tile, m] = lc.edges[E].slots[0].first >= 0 ? lc.edges[E].slots[0]
                                                         : lc.edges[E].slots[1];
        int t0 = lc.tiles[tile].p0_tile;
        int side = lc.tiles[tile].side_anchor[m];
        int ar = cs.spec.tile_types[t0].arity();
        int e0 = lc.edges[E].p0_edge;
        int len = static_cast<int>(lc.edge_expansion[e0].size());
        Dir eps = cs.spec.tile_types[t0].boundary[side].dir;
        int pos = lc.pos_on_p0[E];
        double frac = (0.5 + (eps > 0 ? pos : len - 1 - pos)) / len;
        double a1 = 2 * 3.14159265358979 * side / ar - 1.5707963;
        double a2 = 2 * 3.14159265358979 * (side + 1) / ar - 1.5707963;
        double cx = tile_center_x(t0);
        double x1 = cx + R * std::cos(a1), y1 = PAD + R + R * std::sin(a1);
        double x2 = cx + R * std::cos(a2), y2 = PAD + R + R * std::sin(a2);
        return {x1 + frac * (x2 - x1), y1 + frac * (y2 - y1)};
    };
    std::vector<std::pair<double, double>> pos(tt.vertices.size(), {0, 0});
    for (size_t v = 0; v < tt.vertices.size(); ++v)
        if (tt.vertices[v].kind == TrainTrack::VKind::BoundaryPoint)
            pos[v] = bp_pos(static_cast<int>(v));
    // interior vertices: centroid of adjacent boundary points, nudged inward
    for (size_t v = 0; v < tt.vertices.size(); ++v) {
        if (tt.vertices[v].kind == TrainTrack::VKind::BoundaryPoint) continue;
        double sx = 0, sy = 0;
        int k = 0;
        for (const auto& e : tt.edges)
            for (int end = 0; end < 2; ++end)
                if (e.v[end] == static_cast<int>(v) &&
                    tt.vertices[e.v[1 - end]].kind == TrainTrack::VKind::BoundaryPoint) {
                    auto [x, y] = pos[e.v[1 - end]];
                    sx += x;
                    sy += y;
                    k++;
                }
        if (k == 0) {
            sx = tile_center_x(tt.vertices[v].anchor_tile);
            sy = PAD + R;
            k = 1;
        }
        double cx = tile_center_x(tt.vertices[v].anchor_tile);
        pos[v] = {(sx / k + cx) / 2, (sy / k + PAD + R) / 2};
    }
    for (const auto& e : tt.edges) {
        auto [x1, y1] = pos[e.v[0]];
        auto [x2, y2] = pos[e.v[1]];
        const char* color = e.kind == TrainTrack::EKind::BoneChord
                                ? "crimson"
                                : (e.kind == TrainTrack::EKind::StarSpoke ? "royalblue"
                                                                          : "darkgreen");
        os << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\""
           << y2 << "\" stroke=\"" << color << "\"/>\n";
    }
    for (size_t v = 0; v < tt.vertices.size(); ++v) {
        auto [x, y] = pos[v];
        os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"black\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace fsr
