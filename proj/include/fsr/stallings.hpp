#pragma once

#include <map>
#include <vector>

#include "fsr/words.hpp"

namespace fsr {

// Stallings core graph of a finitely generated subgroup of a free group.
// Arcs are labeled by generators (1-based); the graph is kept folded, so
// membership is decided by reading labels from the base vertex.
class CoreGraph {
public:
    // Fold the subgroup generated by `gens` (words over generators 1..rank).
    static CoreGraph fold_subgroup(const std::vector<Word>& gens, int alphabet_rank);

    int rank() const { return rank_; }
    bool member(const Word& w) const;

    // For rank-1 subgroups: a word g with subgroup = <g>.
    Word cyclic_generator() const;

    size_t vertex_count() const { return adj_.size(); }
    size_t arc_count() const;

private:
    // adj_[v][label] = target, labels -r..-1,1..r encoded via key.
    std::vector<std::map<int, int>> adj_;
    int base_ = 0;
    int rank_ = 0;
    int alphabet_ = 0;

    void compute_rank();
};

}  // namespace fsr
