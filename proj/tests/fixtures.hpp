#pragma once

#include "fsr/model.hpp"
#include "fsr/planar.hpp"

namespace fsrtest {

// Two triangles glued along their common boundary; each subdivides into two
// triangles across an arc from a side point to the opposite corner. Degree
// 2; edge c splits into two c-halves (exponential), a feeds b, b is fixed.
fsr::FsrSpec tri2_rule();

// Pillowcase doubling: two squares glued into a pillow, each subdividing
// 2x2 (the z -> 2z map on the square pillowcase). Degree 4, all four
// vertices Julia, spine is a single peripheral circle.
fsr::FsrSpec pillow2x2_rule();

// Double of a triangulated triangle with halved sides: every edge splits in
// two (nu = 2) while every bone crosses at least three subtiles at level 1,
// so the expansion estimate dominates (lambda-hat >= 3). Empty spine.
fsr::FsrSpec expansion_rule();

}  // namespace fsrtest

namespace fsrtest2 {
// Single-tile sphere: a square with opposite side pairs glued (boundary
// word a+ a- b+ b-), subdividing trivially. Degree 1; every pair of sides
// is a periodic band, so the level-0 spine is one full star clique.
fsr::FsrSpec pillow_identity_rule();
}  // namespace fsrtest2
