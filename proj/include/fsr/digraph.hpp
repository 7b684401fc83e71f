#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fsr {

enum class NodeDynamics { Periodic, Preperiodic, Transient };

enum class GrowthClass { Exponential, Polynomial };

struct NodeGrowth {
    GrowthClass cls = GrowthClass::Polynomial;
    int degree = -1;  // meaningful for Polynomial only
};

struct SccInfo {
    std::vector<int> nodes;
    size_t arc_count = 0;
    bool is_cycle = false;       // strongly connected single cycle
    bool permutation = false;    // adjacency block is a permutation matrix
    double spectral_radius = 0.0;
};

struct GrowthReport {
    std::vector<NodeGrowth> per_node;
    std::vector<SccInfo> sccs;
    bool entropy_zero = false;
    double spectral_radius = 0.0;   // max over SCC blocks
    double log_spectral_radius = 0.0;
};

// Annotated directed multigraph. Nodes carry string labels; arcs carry
// multiplicity. SCC decomposition and reachability are computed eagerly.
class Digraph {
public:
    explicit Digraph(std::vector<std::string> labels);

    int add_node(const std::string& label);
    void add_arc(int from, int to, long multiplicity = 1);
    void finalize();  // compute SCCs, dynamics flags, reachability

    int node_count() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int v) const { return labels_[v]; }
    std::optional<int> node_by_label(const std::string& l) const;
    long multiplicity(int from, int to) const;
    const std::map<int, long>& out_arcs(int v) const { return adj_[v]; }
    long out_degree(int v) const;

    int scc_of(int v) const { return scc_of_[v]; }
    int scc_count() const { return static_cast<int>(scc_nodes_.size()); }
    const std::vector<int>& scc_nodes(int c) const { return scc_nodes_[c]; }
    bool scc_has_arc(int c) const;
    // SCC indices are a reverse topological order: arcs go from higher to
    // lower index (matching the upper-triangular block form convention
    // after reversal).
    NodeDynamics dynamics(int v) const { return dyn_[v]; }
    bool reaches(int from, int to) const { return reach_[from][to]; }

    // Ideal generated by v: every node reachable from v.
    std::vector<int> ideal(int v) const;
    // All ideals (downward-closed reachability sets). Exponential in the
    // worst case; intended for small graphs.
    std::vector<std::vector<int>> all_ideals(size_t cap = 1u << 20) const;

    mpz_class count_paths(int v, int n) const;

    GrowthReport classify_growth() const;

    struct EntropyWitness {
        std::vector<int> cycle_a, cycle_b;  // node sequences of two crossing cycles
    };
    std::pair<bool, std::optional<EntropyWitness>> entropy_is_zero() const;

    double spectral_radius(double rel_tol = 1e-9, long max_iter = 100000) const;

private:
    std::vector<std::string> labels_;
    std::map<std::string, int> by_label_;
    std::vector<std::map<int, long>> adj_;
    bool finalized_ = false;

    std::vector<int> scc_of_;
    std::vector<std::vector<int>> scc_nodes_;
    std::vector<NodeDynamics> dyn_;
    std::vector<std::vector<bool>> reach_;

    void scc_info_fill(SccInfo& info) const;
    double scc_spectral_radius(const std::vector<int>& nodes, double rel_tol,
                               long max_iter) const;
};

}  // namespace fsr
