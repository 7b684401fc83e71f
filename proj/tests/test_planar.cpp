#include <doctest.h>

#include <random>

#include "fsr/format.hpp"
#include "fsr/planar.hpp"

using namespace fsr;

TEST_CASE("theta graph traces three bigon faces") {
    PlanarGraph g = theta_graph();
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 3);
    CHECK(g.face_count() == 3);
    for (const auto& f : g.faces()) CHECK(f.size() == 2);
    auto c = g.edge_connectivity();
    CHECK(c.two_vertex_connected);
    CHECK(c.two_edge_connected);
    CHECK(c.three_edge_connected);
}

TEST_CASE("K4 traces four triangles") {
    PlanarGraph g = k4_graph();
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 6);
    CHECK(g.face_count() == 4);
    for (const auto& f : g.faces()) CHECK(f.size() == 3);
    CHECK(g.edge_connectivity().three_edge_connected);
}

TEST_CASE("K5 rotation systems are rejected") {
    // K5 has no spherical embedding: any rotation system fails Euler
    std::vector<std::pair<std::string, std::vector<std::string>>> rot;
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int v = 0; v < 5; ++v) {
        std::vector<std::string> ds;
        for (int w = 0; w < 5; ++w) {
            if (v == w) continue;
            ds.push_back("d" + std::to_string(v) + "_" + std::to_string(w));
            if (v < w)
                pairs.push_back({"d" + std::to_string(v) + "_" + std::to_string(w),
                                 "d" + std::to_string(w) + "_" + std::to_string(v)});
        }
        rot.push_back({"v" + std::to_string(v), ds});
    }
    CHECK_THROWS_WITH_AS(PlanarGraph::from_rotation(rot, pairs),
                         doctest::Contains("non-spherical"), std::runtime_error);
}

TEST_CASE("involution errors are reported") {
    CHECK_THROWS_WITH_AS(
        PlanarGraph::from_rotation({{"v", {"a", "b"}}}, {{"a", "a"}}),
        doctest::Contains("involution mismatch"), std::runtime_error);
    CHECK_THROWS_WITH_AS(PlanarGraph::from_rotation({{"v", {"a", "b"}}}, {}),
                         doctest::Contains("involution mismatch"), std::runtime_error);
}

TEST_CASE("double K4 has a 2-edge cut but is 2-connected") {
    PlanarGraph g = double_k4_graph();
    CHECK(g.vertex_count() == 8);
    CHECK(g.edge_count() == 14);
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) >= 3);
    auto c = g.edge_connectivity();
    CHECK(c.two_vertex_connected);
    CHECK(c.two_edge_connected);
    CHECK(!c.three_edge_connected);
}

TEST_CASE("cycle C4: two edges disconnect it") {
    PlanarGraph g = cycle_graph(4);
    auto c = g.edge_connectivity();
    CHECK(c.two_vertex_connected);
    CHECK(c.two_edge_connected);
    CHECK(!c.three_edge_connected);
}

TEST_CASE("single edge has a bridge") {
    PlanarGraph g = path_edge_graph();
    CHECK(g.face_count() == 1);
    auto c = g.edge_connectivity();
    CHECK(!c.two_edge_connected);
}

TEST_CASE("random planar graphs satisfy the generation filters") {
    std::mt19937_64 rng(99);
    RandomPlanarOptions opt;
    for (int i = 0; i < 10; ++i) {
        PlanarGraph g = random_planar_graph(rng, opt);
        CHECK(g.euler() == 2);
        CHECK(g.connected());
        for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) >= 3);
        CHECK(g.edge_connectivity().two_vertex_connected);
    }
}

TEST_CASE("barbell graphs are never 3-edge-connected") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 5; ++i) {
        PlanarGraph g = random_barbell_graph(rng, 5);
        CHECK(g.euler() == 2);
        auto c = g.edge_connectivity();
        CHECK(!c.three_edge_connected);
    }
}

TEST_CASE("planar graph round trip") {
    PlanarGraph g = double_k4_graph();
    std::string text = serialize_planar_graph(g);
    PlanarGraph h = parse_planar_graph(text);
    CHECK(h.vertex_count() == g.vertex_count());
    CHECK(h.edge_count() == g.edge_count());
    CHECK(h.face_count() == g.face_count());
    CHECK(serialize_planar_graph(h) == text);
}

TEST_CASE("ring of four K4s: 2-connected with interleaved 2-cuts") {
    PlanarGraph g = ring_of_k4_graph();
    CHECK(g.vertex_count() == 16);
    CHECK(g.edge_count() == 28);
    CHECK(g.euler() == 2);
    for (int v = 0; v < g.vertex_count(); ++v) CHECK(g.degree(v) >= 3);
    auto c = g.edge_connectivity();
    CHECK(c.two_vertex_connected);
    CHECK(c.two_edge_connected);
    CHECK(!c.three_edge_connected);
}
