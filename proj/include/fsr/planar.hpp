#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fsr {

// Combinatorial planar embedding: darts with a fixed-point-free involution
// (dart <-> reverse) and a rotation (ccw cyclic order of outgoing darts per
// vertex). Faces are traced; embeddings must be spherical (Euler 2).
class PlanarGraph {
public:
    struct Dart {
        std::string id;
        int vertex;   // tail vertex
        int reverse;  // involution partner
        int edge;     // undirected edge index
    };

    static PlanarGraph from_rotation(
        const std::vector<std::pair<std::string, std::vector<std::string>>>& rotations,
        const std::vector<std::pair<std::string, std::string>>& pairs);

    int vertex_count() const { return static_cast<int>(rotation_.size()); }
    int edge_count() const { return static_cast<int>(darts_.size()) / 2; }
    int face_count() const { return static_cast<int>(faces_.size()); }
    int euler() const { return vertex_count() - edge_count() + face_count(); }

    const std::string& vertex_name(int v) const { return vertex_names_[v]; }
    const std::vector<int>& rotation(int v) const { return rotation_[v]; }
    const Dart& dart(int d) const { return darts_[d]; }
    int dart_count() const { return static_cast<int>(darts_.size()); }

    // Faces as cyclic dart sequences (each dart lies in exactly one face,
    // the face on its left).
    const std::vector<std::vector<int>>& faces() const { return faces_; }
    int face_of_dart(int d) const { return face_of_dart_[d]; }

    int degree(int v) const { return static_cast<int>(rotation_[v].size()); }
    bool connected() const;
    bool has_loop() const;
    std::optional<int> vertex_by_name(const std::string& n) const;

    // Connectivity predicates, each computed two ways (cut search and the
    // face-based characterizations); throws on internal disagreement.
    struct Connectivity {
        bool two_vertex_connected;
        bool two_edge_connected;
        bool three_edge_connected;
    };
    Connectivity edge_connectivity() const;

    // Raw construction: rotations as dart ids (ccw per vertex) plus the
    // involution. Dart ids must be 0..2E-1. Traces faces and validates.
    static PlanarGraph from_raw(std::vector<std::vector<int>> rotation,
                                std::vector<int> reverse,
                                std::vector<std::string> names = {},
                                std::vector<std::string> dart_names = {});

private:
    std::vector<Dart> darts_;
    std::vector<std::vector<int>> rotation_;  // out-dart ids per vertex, ccw
    std::vector<std::string> vertex_names_;
    std::vector<std::vector<int>> faces_;
    std::vector<int> face_of_dart_;

    void trace_faces();
};

// Seeded random planar graphs: stacked triangulations with random edge
// deletions, plus two-bridge joins; filtered by the given predicates.
struct RandomPlanarOptions {
    int min_vertices = 4;
    int max_vertices = 9;
    bool require_min_degree_3 = true;
    bool require_two_vertex_connected = true;
};

PlanarGraph random_planar_graph(std::mt19937_64& rng, const RandomPlanarOptions& opt);

// Two disjoint stacked triangulations joined by exactly two edges (never
// 3-edge-connected).
PlanarGraph random_barbell_graph(std::mt19937_64& rng, int size_each);

PlanarGraph theta_graph();
PlanarGraph k4_graph();
PlanarGraph double_k4_graph();
// Four K4 blocks joined in a cycle by single bridge edges: min degree 3,
// 2-vertex-connected, with two interleaved 2-edge cuts around the central
// square face.
PlanarGraph ring_of_k4_graph();
PlanarGraph cycle_graph(int n);
PlanarGraph path_edge_graph();                 // single edge
PlanarGraph triangle_with_pendant_graph();     // triangle plus one pendant edge
PlanarGraph star_graph(int leaves);

}  // namespace fsr
