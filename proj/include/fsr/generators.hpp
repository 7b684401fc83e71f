#pragma once

#include <optional>

#include "fsr/model.hpp"
#include "fsr/planar.hpp"
#include "fsr/subdivide.hpp"

namespace fsr {

// Face-inversion rule of a 2-vertex-connected plane graph: one tile per
// face, edges never subdivide, each chart is the reflected copy of the
// graph inside that face. Optional tau (an orientation-reversing graph
// automorphism given as a vertex permutation) post-composes the map;
// square replaces the rule by its second subdivision.
struct FaceInversionResult {
    FsrSpec spec;
    std::vector<std::string> warnings;
};
FaceInversionResult face_inversion(const PlanarGraph& g,
                                   const std::optional<std::vector<int>>& tau_vertex_perm,
                                   bool square);

// Blow-up of the identity along all edges of a connected loop-free plane
// graph.
FsrSpec blowup_rule(const PlanarGraph& g);

// Derive the cellular automorphism of the face-inversion complex induced by
// an orientation-reversing graph automorphism; nullopt when the vertex
// permutation does not extend to one.
std::optional<CellularAutomorphism> reversing_automorphism(const PlanarGraph& g,
                                                           const std::vector<int>& vertex_perm);

}  // namespace fsr
