#pragma once

#include "fsr/complex.hpp"
#include "fsr/digraph.hpp"
#include "fsr/model.hpp"
#include "fsr/rulegraphs.hpp"
#include "fsr/subdivide.hpp"

namespace fsr {

// Embedded train-track of the level-n non-expanding spine. Vertices carry
// anchors into the leveled complex; gates partition the edge-ends at each
// vertex; a train path changes gates at every vertex.
struct TrainTrack {
    enum class VKind { BoundaryPoint, Zip, StarCenter };
    enum class EKind { BoneChord, StarSpoke, ZipStub };

    struct Vertex {
        VKind kind;
        int anchor_edge = -1;   // level-n edge (BoundaryPoint)
        int anchor_tile = -1;   // level-0 tile (Zip / StarCenter)
        int slot = -1;          // for Zip: which slot side of the anchor edge
        // gates: partition of incident edge-ends; an end is (edge, end index)
        std::vector<std::vector<std::pair<int, int>>> gates;
    };
    struct Edge {
        EKind kind;
        int v[2];          // endpoints; end 0 at v[0]
        int end_slot[2] = {-1, -1};  // slot side of the anchor edge when the
                                     // end sits at a boundary point
        int p0_tile;       // level-0 tile the edge lives in
    };

    int level = 0;
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;

    bool empty() const { return edges.empty(); }
    int gate_of(int vertex, int edge, int end) const;
};

TrainTrack build_spine(const CompiledSpec& cs, const LeveledComplex& lc,
                       const Digraph& band_graph);

// Gate-preserving, label-preserving graph isomorphism (anchors compared
// through the level-0 parent maps).
bool spine_isomorphic(const CompiledSpec& cs, const TrainTrack& a, const LeveledComplex& lca,
                      const TrainTrack& b, const LeveledComplex& lcb);

}  // namespace fsr
