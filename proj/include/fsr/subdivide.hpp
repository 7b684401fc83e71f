#pragma once

#include "fsr/complex.hpp"
#include "fsr/digraph.hpp"
#include "fsr/model.hpp"
#include "fsr/rulegraphs.hpp"

namespace fsr {

// A level-n subband of a level-0 band, with its side anchors.
struct Subband {
    int tile;            // level-n tile index in the level-n complex
    int m1, m2;          // type-side slots of the two sides (m1 < m2)
    int edge1, edge2;    // level-n edges on the boundary of the level-0 tile
    int anchor1, anchor2;  // polygon sides of the level-0 tile
};

// Per level-0 band, its level-n recurrent subbands.
std::map<BandKey, std::vector<Subband>> recurrent_subbands(const CompiledSpec& cs,
                                                           const LeveledComplex& lc,
                                                           const Digraph& band_graph);

// The level-n rule: same complex at level 0, charts replaced by the level-n
// subdivision (f^n as the subdivision map). n = 2 is the square.
FsrSpec derive_rule_at_level(const CompiledSpec& cs, int n);
FsrSpec square_rule(const CompiledSpec& cs);

struct CellularAutomorphism {
    std::map<std::string, DirectedRef> edge_map;           // edge id -> (edge id, dir)
    std::map<std::string, std::pair<std::string, int>> tile_map;  // tile -> (tile, rotation)
    bool reflecting = false;  // orientation-reversing automorphism
};

// The rule with subdivision map tau o f on the same complexes.
FsrSpec compose_with_automorphism(const CompiledSpec& cs, const CellularAutomorphism& tau);

}  // namespace fsr
