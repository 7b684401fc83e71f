#include "fsr/planar.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace fsr {

namespace {

std::runtime_error embed_error(const std::string& what) { return std::runtime_error(what); }

}  // namespace

PlanarGraph PlanarGraph::from_raw(std::vector<std::vector<int>> rotation,
                                  std::vector<int> reverse, std::vector<std::string> names,
                                  std::vector<std::string> dart_names) {
    PlanarGraph g;
    int nd = static_cast<int>(reverse.size());
    if (nd % 2 != 0) throw embed_error("involution mismatch: odd dart count");
    g.darts_.resize(nd);
    std::vector<int> seen(nd, 0);
    for (size_t v = 0; v < rotation.size(); ++v)
        for (int d : rotation[v]) {
            if (d < 0 || d >= nd) throw embed_error("dart id out of range");
            g.darts_[d].vertex = static_cast<int>(v);
            seen[d]++;
        }
    for (int d = 0; d < nd; ++d) {
        if (seen[d] != 1) throw embed_error("involution mismatch: dart not placed exactly once");
        if (reverse[d] == d || reverse[d] < 0 || reverse[d] >= nd ||
            reverse[reverse[d]] != d)
            throw embed_error("involution mismatch: reverse map is not a fixed-point-free involution");
        g.darts_[d].reverse = reverse[d];
        g.darts_[d].id = d < static_cast<int>(dart_names.size()) ? dart_names[d]
                                                                 : "d" + std::to_string(d);
    }
    int ne = 0;
    for (int d = 0; d < nd; ++d)
        if (d < reverse[d]) {
            g.darts_[d].edge = ne;
            g.darts_[reverse[d]].edge = ne;
            ne++;
        }
    g.rotation_ = std::move(rotation);
    g.vertex_names_.resize(g.rotation_.size());
    for (size_t v = 0; v < g.rotation_.size(); ++v)
        g.vertex_names_[v] =
            v < names.size() ? names[v] : "v" + std::to_string(v);
    g.trace_faces();
    if (g.euler() != 2)
        throw embed_error("non-spherical embedding: Euler characteristic " +
                          std::to_string(g.euler()));
    return g;
}

PlanarGraph PlanarGraph::from_rotation(
    const std::vector<std::pair<std::string, std::vector<std::string>>>& rotations,
    const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::map<std::string, int> dart_id;
    std::vector<std::string> dart_names;
    std::vector<std::vector<int>> rot;
    std::vector<std::string> names;
    for (const auto& [vname, ds] : rotations) {
        names.push_back(vname);
        std::vector<int> out;
        for (const auto& d : ds) {
            if (dart_id.count(d)) throw embed_error("dart " + d + " listed twice");
            dart_id[d] = static_cast<int>(dart_names.size());
            dart_names.push_back(d);
            out.push_back(dart_id[d]);
        }
        rot.push_back(out);
    }
    std::vector<int> rev(dart_names.size(), -1);
    for (const auto& [a, b] : pairs) {
        auto ia = dart_id.find(a), ib = dart_id.find(b);
        if (ia == dart_id.end() || ib == dart_id.end())
            throw embed_error("involution mismatch: unknown dart in pair " + a + " " + b);
        if (rev[ia->second] != -1 || rev[ib->second] != -1 || ia->second == ib->second)
            throw embed_error("involution mismatch: dart paired twice");
        rev[ia->second] = ib->second;
        rev[ib->second] = ia->second;
    }
    for (size_t d = 0; d < rev.size(); ++d)
        if (rev[d] == -1)
            throw embed_error("involution mismatch: dart " + dart_names[d] + " has no reverse");
    return from_raw(std::move(rot), std::move(rev), std::move(names), std::move(dart_names));
}

void PlanarGraph::trace_faces() {
    int nd = dart_count();
    // position of each dart in its vertex rotation
    std::vector<int> pos(nd, -1);
    for (const auto& r : rotation_)
        for (size_t i = 0; i < r.size(); ++i) pos[r[i]] = static_cast<int>(i);
    auto next_in_face = [&](int d) {
        int r = darts_[d].reverse;
        const auto& rot = rotation_[darts_[r].vertex];
        int p = pos[r];
        return rot[(p - 1 + rot.size()) % rot.size()];  // sigma^-1 after involution
    };
    faces_.clear();
    face_of_dart_.assign(nd, -1);
    for (int d0 = 0; d0 < nd; ++d0) {
        if (face_of_dart_[d0] != -1) continue;
        std::vector<int> face;
        int d = d0;
        do {
            face_of_dart_[d] = static_cast<int>(faces_.size());
            face.push_back(d);
            d = next_in_face(d);
        } while (d != d0);
        faces_.push_back(std::move(face));
    }
}

bool PlanarGraph::connected() const {
    if (vertex_count() == 0) return true;
    std::vector<bool> vis(vertex_count(), false);
    std::deque<int> q{0};
    vis[0] = true;
    int cnt = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int d : rotation_[v]) {
            int w = darts_[darts_[d].reverse].vertex;
            if (!vis[w]) {
                vis[w] = true;
                cnt++;
                q.push_back(w);
            }
        }
    }
    return cnt == vertex_count();
}

bool PlanarGraph::has_loop() const {
    for (const auto& d : darts_)
        if (darts_[d.reverse].vertex == d.vertex) return true;
    return false;
}

std::optional<int> PlanarGraph::vertex_by_name(const std::string& n) const {
    for (size_t v = 0; v < vertex_names_.size(); ++v)
        if (vertex_names_[v] == n) return static_cast<int>(v);
    return std::nullopt;
}

namespace {

// connectivity of the graph with a vertex subset and edge subset removed
bool connected_without(const PlanarGraph& g, const std::set<int>& no_vertex,
                       const std::set<int>& no_edge) {
    int start = -1, want = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!no_vertex.count(v)) {
            if (start < 0) start = v;
            want++;
        }
    if (want <= 1) return true;
    std::set<int> vis{start};
    std::deque<int> q{start};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (int d : g.rotation(v)) {
            if (no_edge.count(g.dart(d).edge)) continue;
            int w = g.dart(g.dart(d).reverse).vertex;
            if (no_vertex.count(w) || vis.count(w)) continue;
            vis.insert(w);
            q.push_back(w);
        }
    }
    return static_cast<int>(vis.size()) == want;
}

}  // namespace

PlanarGraph::Connectivity PlanarGraph::edge_connectivity() const {
    if (!connected()) throw std::invalid_argument("graph must be connected");
    Connectivity c{};

    // Cut-search method.
    bool cut_vertex = false;
    for (int v = 0; v < vertex_count() && !cut_vertex; ++v)
        if (!connected_without(*this, {v}, {})) cut_vertex = true;
    bool bridge = false;
    for (int e = 0; e < edge_count() && !bridge; ++e)
        if (!connected_without(*this, {}, {e})) bridge = true;
    bool two_cut = bridge;
    for (int e1 = 0; e1 < edge_count() && !two_cut; ++e1)
        for (int e2 = e1 + 1; e2 < edge_count() && !two_cut; ++e2)
            if (!connected_without(*this, {}, {e1, e2})) two_cut = true;
    c.two_vertex_connected = !cut_vertex;
    c.two_edge_connected = !bridge;
    c.three_edge_connected = !bridge && !two_cut;

    // Face-based characterizations.
    bool face_vertex_repeat = false, face_edge_repeat = false, faces_share_two = false;
    std::map<std::pair<int, int>, int> shared;  // (face, face) -> shared edge count
    for (const auto& f : faces_) {
        std::set<int> vs, es;
        for (int d : f) {
            if (!vs.insert(dart(d).vertex).second) face_vertex_repeat = true;
            if (!es.insert(dart(d).edge).second) face_edge_repeat = true;
        }
    }
    for (int e = 0; e < edge_count(); ++e) {
        int d1 = -1, d2 = -1;
        for (int d = 0; d < dart_count(); ++d)
            if (dart(d).edge == e) (d1 < 0 ? d1 : d2) = d;
        int f1 = face_of_dart_[d1], f2 = face_of_dart_[d2];
        if (f1 > f2) std::swap(f1, f2);
        if (f1 != f2 && ++shared[{f1, f2}] >= 2) faces_share_two = true;
    }
    bool b_2vc = !face_vertex_repeat;
    bool b_2ec = !face_edge_repeat;
    bool b_3ec = b_2ec && !faces_share_two;
    if (b_2vc != c.two_vertex_connected || b_2ec != c.two_edge_connected ||
        b_3ec != c.three_edge_connected)
        throw std::logic_error("edge-connectivity methods disagree");
    return c;
}

// ---- generated graphs ------------------------------------------------------

namespace {

struct MutableEmbedding {
    std::vector<std::vector<int>> rot;
    std::vector<int> rev;

    int add_vertex() {
        rot.emplace_back();
        return static_cast<int>(rot.size() - 1);
    }
    // append an edge u-v at the end of both rotations; returns dart u->v
    int add_edge(int u, int v) {
        int d1 = static_cast<int>(rev.size());
        int d2 = d1 + 1;
        rev.push_back(d2);
        rev.push_back(d1);
        rot[u].push_back(d1);
        rot[v].push_back(d2);
        return d1;
    }
    void insert_after(int vertex, int after_dart, int new_dart) {
        auto& r = rot[vertex];
        r.pop_back();  // new_dart was appended by add_edge; reposition it
        auto it = std::find(r.begin(), r.end(), after_dart);
        if (it == r.end()) throw std::logic_error("insert_after: dart not found");
        r.insert(it + 1, new_dart);
    }
    PlanarGraph build() const { return PlanarGraph::from_raw(rot, rev); }
};

// triangle with ccw faces; returns embedding with 2 triangular faces
MutableEmbedding triangle_embedding() {
    MutableEmbedding m;
    m.add_vertex();
    m.add_vertex();
    m.add_vertex();
    int d01 = m.add_edge(0, 1);
    int d12 = m.add_edge(1, 2);
    int d20 = m.add_edge(2, 0);
    (void)d01;
    (void)d12;
    (void)d20;
    return m;
}

// insert a vertex into the triangular face containing dart d (on its left),
// connecting it to the three corners
void stack_face(MutableEmbedding& m, const PlanarGraph& traced, int face) {
    const auto& fd = traced.faces()[face];
    if (fd.size() != 3) throw std::logic_error("stack_face needs a triangle");
    int w = m.add_vertex();
    for (int k = 0; k < 3; ++k) {
        int d = fd[k];  // leaving dart of corner k
        int tail = traced.dart(d).vertex;
        int spoke = m.add_edge(w, tail);  // rotation at w gets spokes in face order
        // at the corner, the spoke sits ccw-after the leaving dart
        m.insert_after(tail, d, m.rev[spoke]);
    }
}

MutableEmbedding random_stacked(std::mt19937_64& rng, int n_vertices) {
    MutableEmbedding m = triangle_embedding();
    while (static_cast<int>(m.rot.size()) < n_vertices) {
        PlanarGraph g = m.build();
        std::uniform_int_distribution<int> pick(0, g.face_count() - 1);
        stack_face(m, g, pick(rng));
    }
    return m;
}

// add edge tail(du)-tail(dv), entering the faces left of du and dv: the new
// darts are placed ccw-after du and dv in their tails' rotations
void add_edge_in_faces(MutableEmbedding& m, int du, int dv) {
    int u = -1, v = -1;
    for (size_t w = 0; w < m.rot.size(); ++w) {
        for (int d : m.rot[w]) {
            if (d == du) u = static_cast<int>(w);
            if (d == dv) v = static_cast<int>(w);
        }
    }
    if (u < 0 || v < 0) throw std::logic_error("add_edge_in_faces: dart not found");
    int g1 = m.add_edge(u, v);
    // reposition: g1 after du at u; rev(g1) after dv at v
    m.insert_after(v, dv, m.rev[g1]);
    m.insert_after(u, du, g1);
}

// Join two sphere embeddings by two edges across a chosen face of each.
// (ua1, ua2) are corner darts on one face of a; (vb1, vb2) on one face of b.
MutableEmbedding join_by_two_edges(const MutableEmbedding& a, const MutableEmbedding& b,
                                   int ua1, int ua2, int vb1, int vb2) {
    for (int flip = 0; flip < 2; ++flip) {
        MutableEmbedding m = a;
        int doff = static_cast<int>(m.rev.size());
        for (auto r : b.rot) {
            for (auto& d : r) d += doff;
            m.rot.push_back(r);
        }
        for (int r : b.rev) m.rev.push_back(r + doff);
        int w1 = flip ? vb2 : vb1, w2 = flip ? vb1 : vb2;
        add_edge_in_faces(m, ua1, w1 + doff);
        add_edge_in_faces(m, ua2, w2 + doff);
        try {
            m.build();  // validates Euler
            return m;
        } catch (const std::runtime_error&) {
            if (flip == 1) throw;
        }
    }
    throw std::logic_error("unreachable");
}

// two distinct corner darts on one face of the embedding
std::pair<int, int> two_face_corners(const MutableEmbedding& m, int face_pick) {
    PlanarGraph g = m.build();
    int f = face_pick % g.face_count();
    // want two corners at distinct vertices
    for (int tries = 0; tries < g.face_count(); ++tries) {
        const auto& fd = g.faces()[(f + tries) % g.face_count()];
        for (size_t i = 0; i < fd.size(); ++i)
            for (size_t j = i + 1; j < fd.size(); ++j)
                if (g.dart(fd[i]).vertex != g.dart(fd[j]).vertex) return {fd[i], fd[j]};
    }
    throw std::logic_error("no face with two distinct corners");
}

void delete_edge(MutableEmbedding& m, int dart) {
    int d2 = m.rev[dart];
    int lo = std::min(dart, d2), hi = std::max(dart, d2);
    for (auto& r : m.rot) {
        r.erase(std::remove(r.begin(), r.end(), lo), r.end());
        r.erase(std::remove(r.begin(), r.end(), hi), r.end());
        for (auto& d : r) d -= (d > hi ? 2 : (d > lo ? 1 : 0));
    }
    std::vector<int> nrev;
    for (int d = 0; d < static_cast<int>(m.rev.size()); ++d) {
        if (d == lo || d == hi) continue;
        int r = m.rev[d];
        nrev.push_back(r - (r > hi ? 2 : (r > lo ? 1 : 0)));
    }
    m.rev = std::move(nrev);
}

}  // namespace

PlanarGraph random_planar_graph(std::mt19937_64& rng, const RandomPlanarOptions& opt) {
    for (int attempt = 0; attempt < 500; ++attempt) {
        std::uniform_int_distribution<int> nv(opt.min_vertices, opt.max_vertices);
        MutableEmbedding m = random_stacked(rng, nv(rng));
        // random deletions
        std::uniform_int_distribution<int> ndel(0, static_cast<int>(m.rev.size()) / 6);
        int k = ndel(rng);
        for (int i = 0; i < k; ++i) {
            if (m.rev.size() <= 6) break;
            std::uniform_int_distribution<int> pick(0, static_cast<int>(m.rev.size()) - 1);
            delete_edge(m, pick(rng));
        }
        PlanarGraph g;
        try {
            g = m.build();
        } catch (const std::runtime_error&) {
            continue;  // deletions disconnected the embedding
        }
        if (!g.connected()) continue;
        if (opt.require_min_degree_3) {
            bool ok = true;
            for (int v = 0; v < g.vertex_count(); ++v) ok = ok && g.degree(v) >= 3;
            if (!ok) continue;
        }
        if (opt.require_two_vertex_connected && !g.edge_connectivity().two_vertex_connected)
            continue;
        return g;
    }
    throw std::runtime_error("random planar generation failed after 500 attempts");
}

PlanarGraph random_barbell_graph(std::mt19937_64& rng, int size_each) {
    MutableEmbedding a = random_stacked(rng, size_each);
    MutableEmbedding b = random_stacked(rng, size_each);
    std::uniform_int_distribution<int> pick(0, 1 << 20);
    auto [ua1, ua2] = two_face_corners(a, pick(rng));
    auto [vb1, vb2] = two_face_corners(b, pick(rng));
    return join_by_two_edges(a, b, ua1, ua2, vb1, vb2).build();
}

PlanarGraph theta_graph() {
    // vertices X=0, Y=1; edges p,q,r from X to Y
    return PlanarGraph::from_rotation(
        {{"X", {"p+", "q+", "r+"}}, {"Y", {"r-", "q-", "p-"}}},
        {{"p+", "p-"}, {"q+", "q-"}, {"r+", "r-"}});
}

PlanarGraph k4_graph() {
    MutableEmbedding m = triangle_embedding();
    PlanarGraph g0 = m.build();
    stack_face(m, g0, 0);
    return m.build();
}

PlanarGraph double_k4_graph() {
    // Two K4s joined by two edges (a 2-edge cut, so never 3-edge-connected).
    MutableEmbedding k4 = triangle_embedding();
    stack_face(k4, k4.build(), 0);
    auto [u1, u2] = two_face_corners(k4, 0);
    auto [v1, v2] = two_face_corners(k4, 0);
    return join_by_two_edges(k4, k4, u1, u2, v1, v2).build();
}

PlanarGraph ring_of_k4_graph() {
    // Each K4 blob has an out-port (vertex 4b) and an in-port (4b+1);
    // bridges run out-port(b) -> in-port(b+1). Both bridge ends are placed
    // in the blob face (out, in, center), so the central face traces
    // bridge, blob arc, bridge, blob arc, ... around the ring.
    MutableEmbedding m;
    for (int b = 0; b < 4; ++b) {
        int off = b * 4;
        for (int k = 0; k < 4; ++k) m.add_vertex();
        m.add_edge(off + 0, off + 1);   // darts 12b+0,1
        m.add_edge(off + 1, off + 2);   // 12b+2,3
        m.add_edge(off + 2, off + 0);   // 12b+4,5
        m.add_edge(off + 3, off + 0);   // 12b+6,7
        m.add_edge(off + 3, off + 1);   // 12b+8,9
        m.add_edge(off + 3, off + 2);   // 12b+10,11
    }
    std::vector<int> out_dart(4), in_dart(4);
    for (int b = 0; b < 4; ++b) {
        int u = 4 * b, w = 4 * ((b + 1) % 4) + 1;
        int g1 = m.add_edge(u, w);  // dart 48+2b: u->w, 49+2b: w->u
        out_dart[b] = g1;
        in_dart[(b + 1) % 4] = m.rev[g1];
    }
    for (int b = 0; b < 4; ++b) {
        int d = 12 * b, v = 4 * b;
        m.rot[v + 0] = {d + 0, out_dart[b], d + 7, d + 5};  // 0->1, bridge, 0->3, 0->2
        m.rot[v + 1] = {d + 1, d + 2, d + 9, in_dart[b]};   // 1->0, 1->2, 1->3, bridge
        m.rot[v + 2] = {d + 3, d + 4, d + 11};
        m.rot[v + 3] = {d + 6, d + 8, d + 10};
    }
    return m.build();
}

PlanarGraph cycle_graph(int n) {
    MutableEmbedding m;
    for (int i = 0; i < n; ++i) m.add_vertex();
    for (int i = 0; i < n; ++i) m.add_edge(i, (i + 1) % n);
    return m.build();
}

PlanarGraph path_edge_graph() {
    MutableEmbedding m;
    m.add_vertex();
    m.add_vertex();
    m.add_edge(0, 1);
    return m.build();
}

PlanarGraph triangle_with_pendant_graph() {
    MutableEmbedding m = triangle_embedding();
    m.add_vertex();
    m.add_edge(2, 3);
    return m.build();
}

PlanarGraph star_graph(int leaves) {
    MutableEmbedding m;
    m.add_vertex();
    for (int i = 0; i < leaves; ++i) {
        m.add_vertex();
        m.add_edge(0, i + 1);
    }
    return m.build();
}

}  // namespace fsr
