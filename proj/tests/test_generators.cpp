#include <doctest.h>

#include "fsr/complex.hpp"
#include "fsr/generators.hpp"
#include "fsr/model.hpp"
#include "fsr/rulegraphs.hpp"

using namespace fsr;

namespace {
// level-0 vertex class of a planar-graph vertex in a generated rule: map
// through an incident edge endpoint
int level0_of(const CompiledSpec& cs, const PlanarGraph& g, int v) {
    for (int d = 0; d < g.dart_count(); ++d) {
        int e = g.dart(d).edge;
        int ei = cs.spec.edge_index("e" + std::to_string(e));
        int fwd = std::min(d, g.dart(d).reverse);
        if (g.dart(fwd).vertex == v) return cs.level0.edge_endpoints[ei].first;
        if (g.dart(g.dart(fwd).reverse).vertex == v)
            return cs.level0.edge_endpoints[ei].second;
    }
    throw std::logic_error("isolated vertex");
}
}  // namespace

TEST_CASE("face inversion of the theta graph") {
    auto res = face_inversion(theta_graph(), std::nullopt, false);
    ValidationReport rep = validate_rule(res.spec);
    INFO(rep.summary());
    REQUIRE(rep.ok());
    CHECK(rep.degree == 2);
    CHECK(res.spec.tile_types.size() == 3);
    for (const auto& t : res.spec.tile_types) CHECK(t.arity() == 2);
    CHECK(res.spec.orientation == Orientation::Reversing);

    CompiledSpec cs = compile_rule(res.spec);
    Portrait p = critical_portrait(cs);
    // every vertex is a fixed critical point of local degree deg(v) - 1 = 2
    CHECK(p.critical.size() == 2);
    for (int v : p.critical) {
        CHECK(p.vertex_image[v] == v);
        CHECK(p.local_degree[v] == 2);
    }
    // edges never subdivide: one self-arc per node
    Digraph ecal = build_edge_graph(cs);
    for (int e = 0; e < ecal.node_count(); ++e) {
        CHECK(ecal.out_degree(e) == 1);
        CHECK(ecal.multiplicity(e, e) == 1);
    }
}

TEST_CASE("face inversion of K4 has degree 3") {
    auto res = face_inversion(k4_graph(), std::nullopt, false);
    REQUIRE(validate_rule(res.spec).ok());
    CHECK(validate_rule(res.spec).degree == 3);
    CHECK(res.spec.tile_types.size() == 4);
    for (const auto& t : res.spec.tile_types) CHECK(t.arity() == 3);
}

TEST_CASE("squared face inversion validates and is orientation preserving") {
    auto res = face_inversion(theta_graph(), std::nullopt, true);
    ValidationReport rep = validate_rule(res.spec);
    INFO(rep.summary());
    REQUIRE(rep.ok());
    CHECK(rep.degree == 4);
    CHECK(res.spec.orientation == Orientation::Preserving);
}

TEST_CASE("face inversion requires 2-vertex-connectivity") {
    CHECK_THROWS_WITH_AS(face_inversion(triangle_with_pendant_graph(), std::nullopt, false),
                         doctest::Contains("2-vertex-connected"), std::invalid_argument);
}

TEST_CASE("degree-2 vertices produce a warning") {
    auto res = face_inversion(cycle_graph(4), std::nullopt, false);
    CHECK(!res.warnings.empty());
    // cycle faces are squares; rule has degree 1 (identity-like)
    ValidationReport rep = validate_rule(res.spec);
    CHECK(rep.ok());
    CHECK(rep.degree == 1);
}

TEST_CASE("theta reflection automorphism exists and twists the rule") {
    PlanarGraph g = theta_graph();
    // swapping the two vertices extends to an orientation-reversing
    // automorphism of the embedding
    auto aut = reversing_automorphism(g, {1, 0});
    REQUIRE(aut.has_value());
    auto res = face_inversion(g, std::vector<int>{1, 0}, false);
    ValidationReport rep = validate_rule(res.spec);
    INFO(rep.summary());
    REQUIRE(rep.ok());
    CHECK(res.spec.orientation == Orientation::Preserving);
    CHECK(rep.degree == 2);
}

TEST_CASE("blow-up rules") {
    SUBCASE("single edge") {
        FsrSpec spec = blowup_rule(path_edge_graph());
        ValidationReport rep = validate_rule(spec);
        INFO(rep.summary());
        REQUIRE(rep.ok());
        CHECK(rep.degree == 2);
    }
    SUBCASE("triangle with pendant: degree 5") {
        FsrSpec spec = blowup_rule(triangle_with_pendant_graph());
        ValidationReport rep = validate_rule(spec);
        INFO(rep.summary());
        REQUIRE(rep.ok());
        CHECK(rep.degree == 5);
        CompiledSpec cs = compile_rule(spec);
        Portrait p = critical_portrait(cs);
        // deg_v = deg(v) + 1 at each vertex
        PlanarGraph g = triangle_with_pendant_graph();
        for (int v = 0; v < g.vertex_count(); ++v) {
            int lv = level0_of(cs, g, v);
            CHECK(p.local_degree[lv] == g.degree(v) + 1);
            CHECK(p.vertex_image[lv] == lv);
        }
    }
    SUBCASE("star with three edges: center has local degree 4") {
        FsrSpec spec = blowup_rule(star_graph(3));
        REQUIRE(validate_rule(spec).ok());
        CHECK(validate_rule(spec).degree == 4);
        CompiledSpec cs = compile_rule(spec);
        Portrait p = critical_portrait(cs);
        bool found = false;
        for (int v : p.critical)
            if (p.local_degree[v] == 4) found = true;
        CHECK(found);
    }
    SUBCASE("loops are rejected") {
        // a loop: single vertex with a loop edge
        CHECK_THROWS_WITH_AS(
            blowup_rule(PlanarGraph::from_rotation({{"v", {"a", "b"}}}, {{"a", "b"}})),
            doctest::Contains("loop"), std::invalid_argument);
    }
}

TEST_CASE("edge connectivity triple on generator graphs") {
    auto c = theta_graph().edge_connectivity();
    CHECK((c.two_vertex_connected && c.two_edge_connected && c.three_edge_connected));
    auto d = double_k4_graph().edge_connectivity();
    CHECK((d.two_vertex_connected && d.two_edge_connected && !d.three_edge_connected));
    auto e = cycle_graph(4).edge_connectivity();
    CHECK((e.two_vertex_connected && e.two_edge_connected && !e.three_edge_connected));
}

TEST_CASE("face inversions validate and have self-arc edge graphs") {
    std::mt19937_64 rng(31337);
    RandomPlanarOptions opt;
    opt.min_vertices = 4;
    opt.max_vertices = 7;
    for (int i = 0; i < 5; ++i) {
        PlanarGraph g = random_planar_graph(rng, opt);
        auto res = face_inversion(g, std::nullopt, false);
        ValidationReport rep = validate_rule(res.spec);
        INFO(rep.summary());
        REQUIRE(rep.ok());
        CHECK(rep.degree == g.face_count() - 1);
        CompiledSpec cs = compile_rule(res.spec);
        Digraph ecal = build_edge_graph(cs);
        for (int e = 0; e < ecal.node_count(); ++e) {
            CHECK(ecal.out_degree(e) == 1);
            CHECK(ecal.multiplicity(e, e) == 1);
        }
        // every vertex is a fixed critical point of degree deg(v) - 1
        Portrait p = critical_portrait(cs);
        for (int v = 0; v < g.vertex_count(); ++v) {
            int lv = level0_of(cs, g, v);
            CHECK(p.vertex_image[lv] == lv);
            CHECK(p.local_degree[lv] == g.degree(v) - 1);
        }
    }
}
