#include "fsr/stallings.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

namespace fsr {

namespace {

struct Uf {
    std::vector<int> p;
    explicit Uf(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int a) {
        while (p[a] != a) a = p[a] = p[p[a]];
        return a;
    }
    int grow() {
        p.push_back(static_cast<int>(p.size()));
        return static_cast<int>(p.size() - 1);
    }
};

}  // namespace

CoreGraph CoreGraph::fold_subgroup(const std::vector<Word>& gens, int alphabet_rank) {
    CoreGraph g;
    g.alphabet_ = alphabet_rank;

    Uf uf(1);
    std::vector<std::map<int, int>> adj(1);
    std::deque<std::pair<int, int>> pending;

    auto insert_arc = [&](int u, int l, int w) {
        u = uf.find(u);
        w = uf.find(w);
        auto it = adj[u].find(l);
        if (it == adj[u].end())
            adj[u][l] = w;
        else if (uf.find(it->second) != w)
            pending.emplace_back(uf.find(it->second), w);
    };

    for (const Word& raw : gens) {
        Word w = reduce(raw);
        if (w.trivial()) continue;
        int cur = 0;
        for (size_t i = 0; i < w.letters.size(); ++i) {
            int x = w.letters[i];
            if (x == 0 || std::abs(x) > alphabet_rank)
                throw std::invalid_argument("letter outside alphabet");
            int next;
            if (i + 1 == w.letters.size()) {
                next = 0;
            } else {
                next = uf.grow();
                adj.emplace_back();
            }
            insert_arc(cur, x, next);
            insert_arc(next, -x, cur);
            cur = next;
        }
    }

    while (!pending.empty()) {
        auto [a, b] = pending.front();
        pending.pop_front();
        a = uf.find(a);
        b = uf.find(b);
        if (a == b) continue;
        if (adj[a].size() < adj[b].size()) std::swap(a, b);
        uf.p[b] = a;
        std::map<int, int> moved;
        moved.swap(adj[b]);
        for (auto [l, t] : moved) insert_arc(a, l, t);
    }

    // Compact onto representatives, redirecting arc targets.
    std::map<int, int> newid;
    for (size_t v = 0; v < adj.size(); ++v)
        if (uf.find(static_cast<int>(v)) == static_cast<int>(v))
            newid.emplace(static_cast<int>(v), static_cast<int>(newid.size()));
    g.adj_.resize(newid.size());
    for (auto [old, nid] : newid)
        for (auto [l, t] : adj[old]) g.adj_[nid][l] = newid.at(uf.find(t));
    g.base_ = newid.at(uf.find(0));

    // Prune hairs: non-base vertices of degree <= 1.
    bool changed = true;
    std::vector<bool> dead(g.adj_.size(), false);
    while (changed) {
        changed = false;
        for (size_t v = 0; v < g.adj_.size(); ++v) {
            if (dead[v] || static_cast<int>(v) == g.base_) continue;
            if (g.adj_[v].size() <= 1) {
                if (!g.adj_[v].empty()) {
                    auto [l, t] = *g.adj_[v].begin();
                    g.adj_[t].erase(-l);
                }
                g.adj_[v].clear();
                dead[v] = true;
                changed = true;
            }
        }
    }
    // Drop dead vertices.
    std::vector<int> remap(g.adj_.size(), -1);
    int live = 0;
    for (size_t v = 0; v < g.adj_.size(); ++v)
        if (!dead[v]) remap[v] = live++;
    std::vector<std::map<int, int>> compacted(live);
    for (size_t v = 0; v < g.adj_.size(); ++v) {
        if (dead[v]) continue;
        for (auto [l, t] : g.adj_[v]) compacted[remap[v]][l] = remap[t];
    }
    g.adj_ = std::move(compacted);
    g.base_ = remap[g.base_];
    g.compute_rank();
    return g;
}

size_t CoreGraph::arc_count() const {
    size_t entries = 0;
    for (const auto& m : adj_) entries += m.size();
    return entries / 2;
}

void CoreGraph::compute_rank() {
    size_t e = arc_count();
    size_t v = adj_.size();
    rank_ = static_cast<int>(e + 1 - v);
}

bool CoreGraph::member(const Word& w) const {
    Word r = reduce(w);
    int v = base_;
    for (int x : r.letters) {
        auto it = adj_[v].find(x);
        if (it == adj_[v].end()) return false;
        v = it->second;
    }
    return v == base_;
}

Word CoreGraph::cyclic_generator() const {
    if (rank_ != 1) throw std::logic_error("cyclic_generator requires rank 1");
    // BFS tree from base, then the unique extra arc closes the generator.
    std::vector<int> parent(adj_.size(), -2);
    std::vector<int> parent_label(adj_.size(), 0);
    parent[base_] = -1;
    std::deque<int> q{base_};
    std::map<std::pair<int, int>, bool> tree_arc;  // (v, label) used by tree
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        for (auto [l, t] : adj_[v]) {
            if (parent[t] == -2) {
                parent[t] = v;
                parent_label[t] = l;
                tree_arc[{v, l}] = true;
                tree_arc[{t, -l}] = true;
                q.push_back(t);
            }
        }
    }
    auto word_to = [&](int v) {
        std::vector<int> ls;
        while (v != base_) {
            ls.push_back(parent_label[v]);
            v = parent[v];
        }
        std::reverse(ls.begin(), ls.end());
        return Word(std::move(ls));
    };
    for (size_t v = 0; v < adj_.size(); ++v) {
        for (auto [l, t] : adj_[v]) {
            if (l < 0) continue;
            if (tree_arc.count({static_cast<int>(v), l})) continue;
            Word g = concat(word_to(static_cast<int>(v)), Word({l}));
            return concat(g, inverse(word_to(t)));
        }
    }
    throw std::logic_error("rank-1 core graph without extra arc");
}

}  // namespace fsr
