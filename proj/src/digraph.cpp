#include "fsr/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <stdexcept>

namespace fsr {

Digraph::Digraph(std::vector<std::string> labels) : labels_(std::move(labels)) {
    adj_.resize(labels_.size());
    for (size_t i = 0; i < labels_.size(); ++i) {
        auto [it, fresh] = by_label_.emplace(labels_[i], static_cast<int>(i));
        if (!fresh) throw std::invalid_argument("duplicate node label " + labels_[i]);
    }
}

int Digraph::add_node(const std::string& label) {
    if (finalized_) throw std::logic_error("graph finalized");
    auto [it, fresh] = by_label_.emplace(label, static_cast<int>(labels_.size()));
    if (!fresh) throw std::invalid_argument("duplicate node label " + label);
    labels_.push_back(label);
    adj_.emplace_back();
    return it->second;
}

void Digraph::add_arc(int from, int to, long multiplicity) {
    if (finalized_) throw std::logic_error("graph finalized");
    if (multiplicity <= 0) throw std::invalid_argument("multiplicity must be positive");
    adj_[from][to] += multiplicity;
}

std::optional<int> Digraph::node_by_label(const std::string& l) const {
    auto it = by_label_.find(l);
    if (it == by_label_.end()) return std::nullopt;
    return it->second;
}

long Digraph::multiplicity(int from, int to) const {
    auto it = adj_[from].find(to);
    return it == adj_[from].end() ? 0 : it->second;
}

long Digraph::out_degree(int v) const {
    long d = 0;
    for (auto [t, m] : adj_[v]) d += m;
    return d;
}

void Digraph::finalize() {
    if (finalized_) return;
    finalized_ = true;
    int n = node_count();

    // Tarjan SCC (iterative).
    scc_of_.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on_stack(n, false);
    int next_index = 0;
    struct Frame {
        int v;
        std::map<int, long>::const_iterator it;
    };
    for (int s = 0; s < n; ++s) {
        if (index[s] != -1) continue;
        std::vector<Frame> frames{{s, adj_[s].begin()}};
        index[s] = low[s] = next_index++;
        stack.push_back(s);
        on_stack[s] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.it != adj_[f.v].end()) {
                int w = f.it->first;
                ++f.it;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, adj_[w].begin()});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    std::vector<int> comp;
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp.push_back(w);
                        scc_of_[w] = static_cast<int>(scc_nodes_.size());
                        if (w == v) break;
                    }
                    std::sort(comp.begin(), comp.end());
                    scc_nodes_.push_back(std::move(comp));
                }
            }
        }
    }

    // Reachability closure in reverse topological SCC order (Tarjan emits
    // SCCs so that arcs go from later-emitted to earlier-emitted).
    reach_.assign(n, std::vector<bool>(n, false));
    for (int c = 0; c < scc_count(); ++c) {
        std::vector<bool> acc(n, false);
        for (int v : scc_nodes_[c]) {
            acc[v] = true;
            for (auto [w, m] : adj_[v])
                if (scc_of_[w] != c) {
                    acc[w] = true;
                    for (int x = 0; x < n; ++x) acc[x] = acc[x] || reach_[w][x];
                }
        }
        bool has_arc = scc_has_arc(c);
        for (int v : scc_nodes_[c]) {
            reach_[v] = acc;
            if (!has_arc) reach_[v][v] = false;  // reachable via a nonempty path only
        }
        // Within-SCC arcs to nodes of the same SCC already covered by acc.
    }

    dyn_.assign(n, NodeDynamics::Transient);
    for (int v = 0; v < n; ++v) {
        if (reach_[v][v])
            dyn_[v] = NodeDynamics::Periodic;
        else {
            for (int w = 0; w < n && dyn_[v] == NodeDynamics::Transient; ++w)
                if (reach_[v][w] && reach_[w][w]) dyn_[v] = NodeDynamics::Preperiodic;
        }
    }
}

bool Digraph::scc_has_arc(int c) const {
    for (int v : scc_nodes_[c])
        for (auto [w, m] : adj_[v])
            if (scc_of_[w] == c) return true;
    return false;
}

std::vector<int> Digraph::ideal(int v) const {
    std::vector<int> out;
    for (int w = 0; w < node_count(); ++w)
        if (w == v || reach_[v][w]) out.push_back(w);
    return out;
}

std::vector<std::vector<int>> Digraph::all_ideals(size_t cap) const {
    // Enumerate ideals over the condensation DAG: a set of SCCs closed
    // under reachability. SCC indices are reverse-topological, so scanning
    // components in increasing index keeps every prefix decision valid.
    int k = scc_count();
    std::vector<std::vector<int>> scc_succ(k);
    for (int c = 0; c < k; ++c)
        for (int v : scc_nodes_[c])
            for (auto [w, m] : adj_[v])
                if (scc_of_[w] != c) scc_succ[c].push_back(scc_of_[w]);
    std::vector<std::vector<bool>> chosen_sets;
    std::vector<bool> cur(k, false);
    std::function<void(int)> rec = [&](int c) {
        if (chosen_sets.size() >= cap) throw std::runtime_error("ideal enumeration cap exceeded");
        if (c == k) {
            chosen_sets.push_back(cur);
            return;
        }
        // Option: exclude SCC c — always allowed (successors have lower index).
        cur[c] = false;
        rec(c + 1);
        // Option: include SCC c — requires all successors included.
        bool ok = true;
        for (int s : scc_succ[c])
            if (!cur[s]) ok = false;
        if (ok) {
            cur[c] = true;
            rec(c + 1);
            cur[c] = false;
        }
    };
    rec(0);
    std::vector<std::vector<int>> out;
    for (const auto& set : chosen_sets) {
        std::vector<int> ideal_nodes;
        for (int c = 0; c < k; ++c)
            if (set[c])
                for (int v : scc_nodes_[c]) ideal_nodes.push_back(v);
        if (ideal_nodes.empty()) continue;  // only nonempty ideals are counted
        std::sort(ideal_nodes.begin(), ideal_nodes.end());
        out.push_back(std::move(ideal_nodes));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

mpz_class Digraph::count_paths(int v, int n) const {
    if (n < 0) throw std::invalid_argument("negative path length");
    std::vector<mpz_class> cur(node_count(), 0);
    cur[v] = 1;
    for (int step = 0; step < n; ++step) {
        std::vector<mpz_class> next(node_count(), 0);
        for (int u = 0; u < node_count(); ++u) {
            if (cur[u] == 0) continue;
            for (auto [w, m] : adj_[u]) next[w] += cur[u] * m;
        }
        cur = std::move(next);
    }
    mpz_class total = 0;
    for (const auto& x : cur) total += x;
    return total;
}

void Digraph::scc_info_fill(SccInfo& info) const {
    info.arc_count = 0;
    for (int v : info.nodes)
        for (auto [w, m] : adj_[v])
            if (scc_of_[w] == scc_of_[info.nodes[0]]) info.arc_count += m;
    size_t nn = info.nodes.size();
    // A strongly connected multigraph with as many arcs as nodes is a
    // single cycle; with fewer it has no arc at all (trivial SCC).
    info.is_cycle = info.arc_count == nn && info.arc_count > 0 && scc_has_arc(scc_of_[info.nodes[0]]);
    info.permutation = true;
    for (int v : info.nodes) {
        long row = 0;
        for (auto [w, m] : adj_[v])
            if (scc_of_[w] == scc_of_[v]) {
                row += m;
                if (m > 1) info.permutation = false;
            }
        if (row != 1) info.permutation = false;
    }
    if (info.arc_count == 0) info.permutation = false;
}

GrowthReport Digraph::classify_growth() const {
    GrowthReport rep;
    int k = scc_count();
    rep.sccs.resize(k);
    std::vector<bool> scc_exponential(k, false);
    std::vector<int> scc_cycle_weight(k, 0);
    for (int c = 0; c < k; ++c) {
        rep.sccs[c].nodes = scc_nodes_[c];
        scc_info_fill(rep.sccs[c]);
        bool has_arc = scc_has_arc(c);
        scc_exponential[c] = has_arc && !rep.sccs[c].is_cycle;
        scc_cycle_weight[c] = rep.sccs[c].is_cycle ? 1 : 0;
        rep.sccs[c].spectral_radius = has_arc ? scc_spectral_radius(scc_nodes_[c], 1e-9, 100000) : 0.0;
    }
    // Longest cycle-count over condensation paths; SCC indices are
    // reverse-topological so successors are already solved.
    std::vector<int> best(k, 0);
    std::vector<bool> reaches_exponential(k, false);
    for (int c = 0; c < k; ++c) {
        best[c] = scc_cycle_weight[c];
        reaches_exponential[c] = scc_exponential[c];
        int succ_best = 0;
        for (int v : scc_nodes_[c])
            for (auto [w, m] : adj_[v])
                if (scc_of_[w] != c) {
                    succ_best = std::max(succ_best, best[scc_of_[w]]);
                    reaches_exponential[c] = reaches_exponential[c] || reaches_exponential[scc_of_[w]];
                }
        best[c] += succ_best;
    }
    rep.per_node.resize(node_count());
    for (int v = 0; v < node_count(); ++v) {
        int c = scc_of_[v];
        if (reaches_exponential[c]) {
            rep.per_node[v].cls = GrowthClass::Exponential;
        } else {
            rep.per_node[v].cls = GrowthClass::Polynomial;
            rep.per_node[v].degree = best[c] - 1;
        }
    }
    auto [zero, wit] = entropy_is_zero();
    rep.entropy_zero = zero;
    rep.spectral_radius = spectral_radius();
    rep.log_spectral_radius = rep.spectral_radius > 0 ? std::log(rep.spectral_radius) : 0.0;
    return rep;
}

std::pair<bool, std::optional<Digraph::EntropyWitness>> Digraph::entropy_is_zero() const {
    // Method 1: cycles are pairwise disjoint iff every SCC is a single
    // cycle or arcless.
    bool disjoint = true;
    int bad_scc = -1;
    for (int c = 0; c < scc_count() && disjoint; ++c) {
        SccInfo info;
        info.nodes = scc_nodes_[c];
        scc_info_fill(info);
        if (scc_has_arc(c) && !info.is_cycle) {
            disjoint = false;
            bad_scc = c;
        }
    }
    // Method 2: every irreducible diagonal block is a permutation matrix.
    bool perm = true;
    for (int c = 0; c < scc_count() && perm; ++c) {
        if (!scc_has_arc(c)) continue;
        SccInfo info;
        info.nodes = scc_nodes_[c];
        scc_info_fill(info);
        if (!info.permutation) perm = false;
    }
    if (disjoint != perm)
        throw std::logic_error("entropy-zero methods disagree (internal inconsistency)");
    if (disjoint) return {true, std::nullopt};

    // Build a witness: two distinct cycles through a shared node of the bad SCC.
    EntropyWitness wit;
    int c = bad_scc;
    // Find a node with two distinct in-SCC out-arcs, or a multiplicity-2 arc.
    int pivot = -1, succ1 = -1, succ2 = -1;
    for (int v : scc_nodes_[c]) {
        std::vector<int> outs;
        for (auto [w, m] : adj_[v])
            if (scc_of_[w] == c) {
                outs.push_back(w);
                if (m >= 2) outs.push_back(w);
            }
        if (outs.size() >= 2) {
            pivot = v;
            succ1 = outs[0];
            succ2 = outs[1];
            break;
        }
    }
    if (pivot < 0) throw std::logic_error("non-cycle SCC without branching node");
    auto path_back = [&](int from) {
        // BFS within SCC back to pivot.
        std::deque<int> q{from};
        std::map<int, int> prev{{from, -1}};
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            if (v == pivot) break;
            for (auto [w, m] : adj_[v])
                if (scc_of_[w] == c && !prev.count(w)) {
                    prev[w] = v;
                    q.push_back(w);
                }
        }
        std::vector<int> rev{pivot};
        if (from != pivot) {
            int v = pivot;
            while (prev.at(v) != -1) {
                v = prev.at(v);
                rev.push_back(v);
            }
        }
        std::reverse(rev.begin(), rev.end());
        return rev;  // from ... pivot
    };
    wit.cycle_a.push_back(pivot);
    for (int x : path_back(succ1)) wit.cycle_a.push_back(x);
    wit.cycle_b.push_back(pivot);
    for (int x : path_back(succ2)) wit.cycle_b.push_back(x);
    return {false, wit};
}

double Digraph::scc_spectral_radius(const std::vector<int>& nodes, double rel_tol,
                                    long max_iter) const {
    size_t n = nodes.size();
    std::map<int, int> idx;
    for (size_t i = 0; i < n; ++i) idx[nodes[i]] = static_cast<int>(i);
    // Power iteration on A + I: keeps periodic (imprimitive) blocks
    // convergent; subtract the shift at the end.
    std::vector<double> x(n, 1.0), y(n);
    double prev = 0.0;
    for (long it = 0; it < max_iter; ++it) {
        for (size_t i = 0; i < n; ++i) {
            double acc = x[i];  // identity shift
            for (auto [w, m] : adj_[nodes[i]]) {
                auto j = idx.find(w);
                if (j != idx.end()) acc += static_cast<double>(m) * x[j->second];
            }
            y[i] = acc;
        }
        double norm = 0.0;
        for (double v : y) norm = std::max(norm, v);
        if (norm == 0.0) return 0.0;
        for (size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        double est = norm - 1.0;
        if (it > 0 && std::abs(est - prev) <= rel_tol * std::max(1.0, std::abs(est)))
            return est;
        prev = est;
    }
    throw std::runtime_error("power iteration did not converge; last estimate " +
                             std::to_string(prev));
}

double Digraph::spectral_radius(double rel_tol, long max_iter) const {
    auto [zero, wit] = entropy_is_zero();
    bool any_cycle = false;
    for (int c = 0; c < scc_count(); ++c) any_cycle = any_cycle || scc_has_arc(c);
    if (!any_cycle) return 0.0;
    if (zero) return 1.0;  // exact: permutation blocks only
    double best = 0.0;
    for (int c = 0; c < scc_count(); ++c) {
        if (!scc_has_arc(c)) continue;
        best = std::max(best, scc_spectral_radius(scc_nodes_[c], rel_tol, max_iter));
    }
    return best;
}

}  // namespace fsr
