#pragma once

#include "fsr/digraph.hpp"
#include "fsr/model.hpp"

namespace fsr {

// Directed graph of edge subdivisions: nodes are edge types, one arc
// e -> e' per occurrence of e' in e's subdivision sequence.
Digraph build_edge_graph(const CompiledSpec& cs);

// A band of a tile type: an unordered pair of distinct polygon sides.
struct BandKey {
    int tile;    // tile type index
    int side_a;  // side_a < side_b
    int side_b;
    bool operator<(const BandKey& o) const {
        return std::tie(tile, side_a, side_b) < std::tie(o.tile, o.side_a, o.side_b);
    }
    bool operator==(const BandKey& o) const {
        return tile == o.tile && side_a == o.side_a && side_b == o.side_b;
    }
};

std::string band_label(const CompiledSpec& cs, const BandKey& b);

// Directed graph of bands: nodes are all bands (t, {i,j}); arcs enumerate the
// level-1 subbands read off the charts.
Digraph build_band_graph(const CompiledSpec& cs);

std::vector<BandKey> all_bands(const CompiledSpec& cs);

}  // namespace fsr
