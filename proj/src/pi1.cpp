#include "fsr/pi1.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace fsr {

Word WordChart::crossing_word(const LeveledComplex& lc, int edge, int from_slot) const {
    (void)lc;
    if (from_slot == left_slot[edge]) return arc_word[edge];
    return inverse(arc_word[edge]);
}

Word WordChart::star_word(const LeveledComplex& lc, int v, int start) const {
    const auto& rot = lc.vertex_rotation[v];
    Word w;
    int k = static_cast<int>(rot.size());
    for (int i = 0; i < k; ++i) {
        const auto& c = rot[(start + i) % k];
        w = concat(w, crossing_word(lc, c.edge, c.from_slot));
    }
    return w;
}

namespace {

// ccw boundary items of a tile: (kind 0 = corner c, kind 1 = side m)
std::vector<std::pair<int, int>> boundary_items(const LeveledComplex& lc, int tile) {
    const auto& t = lc.tiles[tile];
    int n = static_cast<int>(t.side_edge.size());
    std::vector<std::pair<int, int>> items;
    if (t.orient > 0) {
        for (int m = 0; m < n; ++m) {
            items.push_back({0, m});
            items.push_back({1, m});
        }
    } else {
        for (int k = 0; k < n; ++k) {
            items.push_back({0, (n - k) % n});
            items.push_back({1, n - 1 - k});
        }
    }
    return items;
}

int item_position(const std::vector<std::pair<int, int>>& items, int kind, int idx) {
    for (size_t i = 0; i < items.size(); ++i)
        if (items[i].first == kind && items[i].second == idx) return static_cast<int>(i);
    throw std::logic_error("boundary item not found");
}

}  // namespace

WordChart build_word_chart(const CompiledSpec& cs, const LeveledComplex& lc,
                           const MarkedSet& marked) {
    (void)cs;
    if (marked.points.size() < 2) throw std::invalid_argument("need at least 2 marked points");
    WordChart ch;

    // marked level-0 vertices -> level-n vertex indices
    std::map<int, int> lv_of;  // level-0 marked id -> level-n vertex
    for (size_t v = 0; v < lc.vertices.size(); ++v) {
        int p0 = lc.vertices[v].p0_vertex;
        if (p0 >= 0 && marked.contains(p0)) lv_of[p0] = static_cast<int>(v);
    }
    for (int a : marked.points)
        if (!lv_of.count(a)) throw std::invalid_argument("marked point not a vertex of the complex");

    ch.root_marked = marked.points.front();
    ch.generator_of.assign(cs.level0.vertex_count, -1);
    for (int a : marked.points) {
        if (a == ch.root_marked) continue;
        ch.generator_of[a] = static_cast<int>(ch.generator_names.size());
        ch.generator_names.push_back("x" + std::to_string(a));
    }

    // left slot per edge
    int ne = static_cast<int>(lc.edges.size());
    ch.left_slot.assign(ne, -1);
    for (int e = 0; e < ne; ++e) {
        const auto& slots = lc.edges[e].slots;
        if (slots.size() != 2) throw std::invalid_argument("word chart needs a closed complex");
        for (size_t s = 0; s < slots.size(); ++s) {
            const auto& T = lc.tiles[slots[s].first];
            Dir amb = T.orient * T.side_dir[slots[s].second];
            if (amb > 0) {
                if (ch.left_slot[e] != -1) throw std::logic_error("two left slots on an edge");
                ch.left_slot[e] = static_cast<int>(s);
            }
        }
        if (ch.left_slot[e] == -1) throw std::logic_error("no left slot on an edge");
    }

    // primal spanning tree from the root vertex
    int root = lv_of.at(ch.root_marked);
    int nv = static_cast<int>(lc.vertices.size());
    std::vector<int> parent_vertex(nv, -1), parent_edge(nv, -1), depth(nv, -1);
    std::vector<int> bfs_order;
    {
        std::deque<int> q{root};
        depth[root] = 0;
        bfs_order.push_back(root);
        // vertex adjacency via edges
        std::vector<std::vector<int>> incident(nv);
        for (int e = 0; e < ne; ++e) {
            incident[lc.edges[e].tail].push_back(e);
            if (lc.edges[e].head != lc.edges[e].tail) incident[lc.edges[e].head].push_back(e);
        }
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int e : incident[v]) {
                int w = lc.edges[e].tail == v ? lc.edges[e].head : lc.edges[e].tail;
                if (depth[w] == -1) {
                    depth[w] = depth[v] + 1;
                    parent_vertex[w] = v;
                    parent_edge[w] = e;
                    q.push_back(w);
                    bfs_order.push_back(w);
                }
            }
        }
        if (static_cast<int>(bfs_order.size()) != nv)
            throw std::logic_error("1-skeleton is disconnected");
    }
    std::vector<bool> in_tree(ne, false);
    for (int v = 0; v < nv; ++v)
        if (parent_edge[v] >= 0) in_tree[parent_edge[v]] = true;

    // dual spanning tree on the complementary edges
    int nf = static_cast<int>(lc.tiles.size());
    std::vector<int> dual_parent_edge(nf, -1), dual_parent_face(nf, -1), dual_depth(nf, -1);
    {
        std::deque<int> q{ch.base_face};
        dual_depth[ch.base_face] = 0;
        int seen = 1;
        while (!q.empty()) {
            int f = q.front();
            q.pop_front();
            for (size_t m = 0; m < lc.tiles[f].side_edge.size(); ++m) {
                int e = lc.tiles[f].side_edge[m];
                if (in_tree[e]) continue;
                for (auto [t2, m2] : lc.edges[e].slots) {
                    if (dual_depth[t2] != -1) continue;
                    dual_depth[t2] = dual_depth[f] + 1;
                    dual_parent_face[t2] = f;
                    dual_parent_edge[t2] = e;
                    q.push_back(t2);
                    seen++;
                }
            }
        }
        if (seen != nf)
            throw std::logic_error("complement of the primal tree is not a dual tree");
    }

    // unknown words on tree edges; all other arcs carry the identity
    ch.arc_word.assign(ne, Word());
    std::vector<bool> solved(ne, false);
    for (int e = 0; e < ne; ++e)
        if (!in_tree[e]) solved[e] = true;

    std::map<int, int> canonical_start;  // level-n vertex -> wedge index
    for (auto it = bfs_order.rbegin(); it != bfs_order.rend(); ++it) {
        int v = *it;
        if (v == root) continue;
        int pe = parent_edge[v];
        const auto& rot = lc.vertex_rotation[v];
        int k = static_cast<int>(rot.size());
        int idx = -1;
        for (int i = 0; i < k; ++i)
            if (rot[i].edge == pe) {
                if (idx != -1) throw std::logic_error("tree edge crossed twice around a vertex");
                idx = i;
            }
        if (idx == -1) throw std::logic_error("tree edge missing from vertex rotation");
        // relation: product starting after the parent-edge crossing equals
        // x_v (marked) or 1, with the unknown as the last factor
        Word known;
        for (int i = 1; i < k; ++i) {
            const auto& c = rot[(idx + i) % k];
            if (!solved[c.edge]) throw std::logic_error("elimination stuck");
            known = concat(known, ch.crossing_word(lc, c.edge, c.from_slot));
        }
        Word rhs;
        int p0 = lc.vertices[v].p0_vertex;
        if (p0 >= 0 && marked.contains(p0) && p0 != ch.root_marked)
            rhs = Word({ch.generator_of[p0] + 1});
        Dir eps = rot[idx].from_slot == ch.left_slot[pe] ? 1 : -1;
        Word u = concat(inverse(known), rhs);
        if (eps < 0) u = inverse(u);
        ch.arc_word[pe] = u;
        solved[pe] = true;
        canonical_start[v] = (idx + 1) % k;
    }
    for (int e = 0; e < ne; ++e)
        if (!solved[e]) throw std::logic_error("unsolved arc word");

    // peripherals
    for (int a : marked.points) {
        int va = lv_of.at(a);
        if (a == ch.root_marked)
            ch.peripheral[a] = ch.star_word(lc, va, 0);
        else
            ch.peripheral[a] = Word({ch.generator_of[a] + 1});
    }

    // Build-time verification.
    for (int v = 0; v < nv; ++v) {
        int p0 = lc.vertices[v].p0_vertex;
        bool is_marked = p0 >= 0 && marked.contains(p0);
        Word s = ch.star_word(lc, v, canonical_start.count(v) ? canonical_start[v] : 0);
        if (!is_marked) {
            if (!s.trivial())
                throw std::logic_error("chart invariant failed: unmarked star word not trivial");
        } else if (p0 != ch.root_marked) {
            if (!(s == Word({ch.generator_of[p0] + 1})))
                throw std::logic_error("chart invariant failed: marked star word != generator");
            Word any = cyclic_reduce(ch.star_word(lc, v, 0));
            if (!(any == Word({ch.generator_of[p0] + 1})))
                throw std::logic_error("chart invariant failed: star not conjugate to generator");
        }
    }
    ch.checks.push_back("star words verified");

    // Total peripheral relation via a planar spider routed along the dual
    // tree: the ordered product of all based peripheral loops reduces to 1.
    {
        // attach wedge per marked point: prefer shallow faces, then low index
        std::map<int, std::pair<int, int>> attach;  // marked -> (wedge index, tile)
        for (int a : marked.points) {
            int va = lv_of.at(a);
            const auto& wedges = lc.vertex_wedges[va];
            int best = -1;
            for (size_t i = 0; i < wedges.size(); ++i) {
                if (best == -1 ||
                    std::make_pair(dual_depth[wedges[i].first], static_cast<int>(i)) <
                        std::make_pair(dual_depth[wedges[best].first], best))
                    best = static_cast<int>(i);
            }
            attach[a] = {best, wedges[best].first};
        }
        // route: per face, the lasso items hanging below it
        struct Item {
            int pos;      // boundary position in the face
            int marked;   // -2: child face, >=0: attachment of this marked point
            int child;    // child face when marked == -2
            int wedge;    // attach wedge when marked >= 0
        };
        std::map<int, std::vector<Item>> items;     // face -> items
        std::set<int> used_faces;                   // faces on some lasso path
        for (int a : marked.points) {
            auto [wedge, tile] = attach[a];
            const auto& wedges = lc.vertex_wedges[lv_of.at(a)];
            int corner = wedges[wedge].second;
            auto bi = boundary_items(lc, tile);
            items[tile].push_back({item_position(bi, 0, corner), a, -1, wedge});
            // walk up the dual tree adding pass-throughs
            int f = tile;
            while (f != ch.base_face && !used_faces.count(f)) {
                used_faces.insert(f);
                int pf = dual_parent_face[f];
                int pe = dual_parent_edge[f];
                // position of pe in parent's boundary
                int m = -1;
                for (size_t mm = 0; mm < lc.tiles[pf].side_edge.size(); ++mm)
                    if (lc.tiles[pf].side_edge[mm] == pe) m = static_cast<int>(mm);
                auto bip = boundary_items(lc, pf);
                items[pf].push_back({item_position(bip, 1, m), -2, f, -1});
                f = pf;
            }
        }
        // dedupe child entries (one per child face)
        for (auto& [f, its] : items) {
            std::sort(its.begin(), its.end(), [](const Item& a, const Item& b) {
                return std::tie(a.pos, a.marked, a.child) < std::tie(b.pos, b.marked, b.child);
            });
            its.erase(std::unique(its.begin(), its.end(),
                                  [](const Item& a, const Item& b) {
                                      return a.marked == b.marked && a.child == b.child &&
                                             a.pos == b.pos;
                                  }),
                      its.end());
        }
        // recursive ccw ordering
        std::vector<std::pair<int, int>> order;  // (marked, wedge)
        std::function<void(int, int)> visit = [&](int face, int entry_pos) {
            auto it = items.find(face);
            if (it == items.end()) return;
            auto its = it->second;
            int total = static_cast<int>(boundary_items(lc, face).size());
            std::sort(its.begin(), its.end(), [&](const Item& a, const Item& b) {
                int pa = ((a.pos - entry_pos) % total + total) % total;
                int pb = ((b.pos - entry_pos) % total + total) % total;
                return std::tie(pa, a.marked, a.child) < std::tie(pb, b.marked, b.child);
            });
            for (const Item& item : its) {
                if (item.marked >= 0) {
                    order.push_back({item.marked, item.wedge});
                } else {
                    int child = item.child;
                    int pe = dual_parent_edge[child];
                    int m = -1;
                    for (size_t mm = 0; mm < lc.tiles[child].side_edge.size(); ++mm)
                        if (lc.tiles[child].side_edge[mm] == pe) m = static_cast<int>(mm);
                    auto bic = boundary_items(lc, child);
                    visit(child, item_position(bic, 1, m));
                }
            }
        };
        visit(ch.base_face, 0);
        if (order.size() != marked.points.size())
            throw std::logic_error("spider routing missed a marked point");
        Word prod;
        for (auto [a, wedge] : order) prod = concat(prod, ch.star_word(lc, lv_of.at(a), wedge));
        if (!prod.trivial())
            throw std::logic_error("chart invariant failed: total peripheral product not trivial");
        ch.checks.push_back("total peripheral relation verified");
    }
    return ch;
}

Word curve_word(const WordChart& chart, const LeveledComplex& lc,
                const std::vector<std::pair<int, Dir>>& crossings) {
    Word w;
    int prev_to = -1, first_from = -1;
    for (size_t i = 0; i < crossings.size(); ++i) {
        auto [e, d] = crossings[i];
        int from_slot = d > 0 ? chart.left_slot[e] : 1 - chart.left_slot[e];
        int from_face = lc.edges[e].slots[from_slot].first;
        int to_face = lc.edges[e].slots[1 - from_slot].first;
        if (i == 0)
            first_from = from_face;
        else if (from_face != prev_to)
            throw std::invalid_argument("non-adjacent crossing at position " + std::to_string(i));
        prev_to = to_face;
        w = concat(w, chart.crossing_word(lc, e, from_slot));
    }
    if (!crossings.empty() && prev_to != first_from)
        throw std::invalid_argument("crossing sequence is not closed");
    return w;
}

}  // namespace fsr
