#pragma once

#include <map>
#include <string>
#include <vector>

#include "fsr/model.hpp"

namespace fsr {

// One level of the iterated subdivision R^n(S_R). Cells carry type maps
// (image under f^n), parent maps (containing level-(n-1) cell) and level-0
// anchors. Tile sides are indexed by the sides of the tile's type polygon.
struct LeveledComplex {
    int level = 0;

    struct Vertex {
        int type_vertex;   // image level-0 vertex under f^n
        int parent;        // containing level-(n-1) vertex, or -1 if none
        int p0_vertex;     // level-0 vertex it coincides with, or -1
        int p0_edge;       // level-0 edge whose interior contains it, or -1
        int p0_tile;       // level-0 tile whose interior contains it, or -1
    };
    struct Edge {
        int type;          // edge type index; f^n maps intrinsic -> positive
        int tail, head;    // level-n vertices along the intrinsic direction
        int parent;        // containing level-(n-1) edge or tile encoded via p0 fields
        int parent_edge;   // level-(n-1) edge containing it, or -1
        int parent_tile;   // level-(n-1) tile containing it (interior), or -1
        int p0_edge;       // level-0 edge containing it, or -1 (then interior to p0_tile)
        int p0_tile;
        // slots filled after construction: incident (tile, side) pairs
        std::vector<std::pair<int, int>> slots;
    };
    struct Tile {
        int type;                 // tile type index
        int parent;               // level-(n-1) tile, or -1 at level 0
        int p0_tile;              // level-0 tile containing it
        std::vector<int> side_edge;   // per type-side: level-n edge
        std::vector<Dir> side_dir;    // per type-side: edge intrinsic dir vs side-forward
        std::vector<int> side_anchor; // per type-side: side of p0 tile's polygon, or -1
        int orient = 1;           // ambient orientation vs the type polygon's ccw
    };

    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Tile> tiles;

    // Ordered level-n subedges of each level-0 edge, along the level-0
    // positive direction, with each subedge's intrinsic direction relative
    // to that traversal.
    std::vector<std::vector<std::pair<int, Dir>>> edge_expansion;
    // position of a level-n edge along its level-0 edge
    std::vector<int> pos_on_p0;   // -1 for interior edges
    std::vector<Dir> dir_on_p0;

    int euler() const {
        return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) +
               static_cast<int>(tiles.size());
    }

    // Rotation system (computed at construction): at each vertex, the ccw
    // cyclic order of crossings. A crossing names the incident edge together
    // with the slot entered when crossing it counterclockwise.
    struct Crossing {
        int edge;
        int from_slot, to_slot;  // indices into edges[edge].slots
    };
    std::vector<std::vector<Crossing>> vertex_rotation;
    // wedge corners parallel to vertex_rotation: wedge i is the (tile,
    // corner) whose exit is crossing i
    std::vector<std::vector<std::pair<int, int>>> vertex_wedges;

    // Dual-graph view: faces are tiles; each edge's two slots give the
    // adjacency. slot 0/1 order is construction order.
    int slot_tile(int edge, int slot) const { return edges[edge].slots[slot].first; }

    int corner_vertex(int tile, int corner) const;
};

// Build the level-n subdivision of the sphere complex. Cap guards the
// materialized size (d^n * tiles <= cap).
LeveledComplex level_complex(const CompiledSpec& cs, int n, long cap = 10'000'000);

// Build the level-n subdivision of a single tile-type polygon (a disk
// complex; boundary edges have a single slot).
LeveledComplex tile_complex(const CompiledSpec& cs, int tile_type, int n, long cap = 10'000'000);

// Canonical structural encoding of a complex (BFS relabeling from every
// seed, lexicographically least). Equal strings == isomorphic complexes
// respecting type maps.
std::string canonical_form(const CompiledSpec& cs, const LeveledComplex& lc);

// Vertex tables of the glued complexes at levels 0 and 1, with the induced
// vertex map and Euler checks. Throws "non-spherical complex" if either
// level fails the sphere count.
struct VertexTables {
    int level0_vertices = 0;
    int level1_vertices = 0;
    std::vector<std::vector<std::pair<int, int>>> level0_corners;  // per vertex: (tile, corner)
    std::vector<int> vertex_map;  // f on level-0 vertices
    int euler0 = 0, euler1 = 0;
};
VertexTables derive_vertices(const CompiledSpec& cs);

}  // namespace fsr
