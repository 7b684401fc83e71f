#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace fsr {

// Direction flags: +1 forward, -1 reversed.
using Dir = int;

struct DirectedRef {
    std::string id;
    Dir dir = 1;
    bool operator==(const DirectedRef& o) const { return id == o.id && dir == o.dir; }
};

struct EdgeTypeDef {
    std::string id;
    // Level-1 subedges in positive traversal order; dir says whether the
    // homeomorphic image under f runs along the target type's positive
    // direction.
    std::vector<DirectedRef> subdivision;
};

struct ChartVertex {
    std::string id;
    enum Kind { Corner, SidePoint, Interior } kind = Interior;
    int side = -1;  // for Corner: corner index; for SidePoint: side index
    int pos = -1;   // for SidePoint: 1-based position along the side
};

struct ChartSubedge {
    std::string id;
    std::string from, to;
};

struct ChartSubtile {
    std::string id;
    std::string type;  // image tile type
    int offset = 0;    // image side receiving boundary position 0
    std::vector<DirectedRef> boundary;  // ccw in the polygon
};

struct SubdivisionChart {
    std::vector<ChartVertex> vertices;
    std::vector<ChartSubedge> subedges;
    std::vector<ChartSubtile> subtiles;
};

struct TileTypeDef {
    std::string id;
    std::vector<DirectedRef> boundary;  // sides, ccw; dir vs edge type's positive
    SubdivisionChart chart;
    int arity() const { return static_cast<int>(boundary.size()); }
};

enum class Orientation { Preserving, Reversing };

struct FsrSpec {
    std::string name;
    Orientation orientation = Orientation::Preserving;
    std::vector<EdgeTypeDef> edge_types;   // sorted by id after normalization
    std::vector<TileTypeDef> tile_types;

    const EdgeTypeDef* edge(const std::string& id) const;
    const TileTypeDef* tile(const std::string& id) const;
    int edge_index(const std::string& id) const;
    int tile_index(const std::string& id) const;
    void sort_by_id();
};

struct ValidationIssue {
    std::string where;  // cell / chart element id
    std::string what;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    std::vector<std::string> warnings;
    int degree = 0;              // valid only when ok()
    bool orientation_consistent = false;
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

// Compiled per-tile chart: resolved indices, per-side boundary sequences,
// image maps. Produced by validate_rule when the spec is valid.
struct CompiledChart {
    // vertex/subedge/subtile index spaces local to the chart
    std::map<std::string, int> vtx_index, sub_index, subtile_index;
    std::vector<ChartVertex> vertices;
    std::vector<ChartSubedge> subedges;
    std::vector<ChartSubtile> subtiles;

    // For each polygon side i: boundary subedges in ccw order with
    // dir-along-side (+1 = subedge's intrinsic direction agrees).
    std::vector<std::vector<std::pair<int, Dir>>> side_seq;

    // Images under f. For subedges: image edge-type index and whether the
    // subedge's intrinsic direction maps onto the image's positive one.
    std::vector<int> vertex_image;             // -> level-0 vertex index
    std::vector<int> subedge_image_type;       // -> edge type index
    std::vector<Dir> subedge_image_dir;
    std::vector<int> subtile_image_type;       // -> tile type index

    // subtile boundary position a -> image side of the image tile type
    std::vector<std::vector<int>> subtile_side_image;

    // Which subtile(s) are incident to each subedge: (subtile, position, dir).
    struct Incidence {
        int subtile, position;
        Dir dir;
    };
    std::vector<std::vector<Incidence>> subedge_incidences;

    bool subedge_on_boundary(int s) const { return boundary_side[s] >= 0; }
    std::vector<int> boundary_side;  // side index or -1
    std::vector<int> boundary_pos;   // position of subedge along its side
};

// Level-0 glued complex summary (vertices via corner identification).
struct Level0Info {
    int vertex_count = 0;
    // per edge type: endpoint vertex ids (tail, head)
    std::vector<std::pair<int, int>> edge_endpoints;
    // corners: per tile, per corner index -> vertex id
    std::vector<std::vector<int>> tile_corner_vertex;
    // (tile, side) slots per edge type (exactly two for valid specs)
    std::vector<std::vector<std::pair<int, int>>> edge_slots;
    int euler() const;
    int edge_count = 0, tile_count = 0;
};

struct CompiledSpec {
    FsrSpec spec;
    std::vector<CompiledChart> charts;  // per tile type
    Level0Info level0;
    int degree = 0;
};

ValidationReport validate_rule(const FsrSpec& spec);

// Validates and compiles; throws std::runtime_error with the report summary
// if the spec is invalid.
CompiledSpec compile_rule(const FsrSpec& spec);

// ---- portrait -------------------------------------------------------------

struct Portrait {
    // level-0 vertices (indices into Level0Info), their images and local
    // degrees of the level-1 vertices projecting onto them
    std::vector<int> vertex_image;          // f on level-0 vertices
    std::vector<int> local_degree;          // deg_v(f) at level-0 vertices
    std::vector<int> critical;              // level-0 vertex ids in Omega_f
    std::vector<int> postcritical;          // P_f
    std::vector<bool> is_fatou;             // per level-0 vertex (meaning for marked use)
    int degree = 0;
    std::vector<std::string> warnings;
    // all level-1 local degrees (for Riemann-Hurwitz): (vertex label, deg)
    std::vector<std::pair<std::string, int>> level1_degrees;
};

Portrait critical_portrait(const CompiledSpec& cs);

struct MarkedSet {
    std::vector<int> points;        // level-0 vertex ids, sorted
    std::vector<bool> fatou;        // parallel to points
    bool contains(int v) const;
};

MarkedSet marked_closure(const CompiledSpec& cs, const std::vector<int>& seed);

}  // namespace fsr
