#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "fsr/generators.hpp"
#include "fsr/pi1.hpp"

using namespace fsr;

namespace {

void check_chart_invariants(const CompiledSpec& cs, const LeveledComplex& lc,
                            const MarkedSet& marked) {
    // build_word_chart throws if star words or the total peripheral product
    // fail; reaching here means they were verified
    WordChart ch = build_word_chart(cs, lc, marked);
    CHECK(ch.checks.size() == 2);
    // reverse arcs invert
    for (size_t e = 0; e < lc.edges.size(); ++e) {
        Word l = ch.crossing_word(lc, static_cast<int>(e), ch.left_slot[e]);
        Word r = ch.crossing_word(lc, static_cast<int>(e), 1 - ch.left_slot[e]);
        CHECK(concat(l, r).trivial());
    }
}

}  // namespace

TEST_CASE("two-tile two-edge sphere with both vertices marked") {
    // theta graph face inversion has 3 tiles; the simplest two-tile sphere
    // comes from a 2-cycle: two vertices joined by two parallel edges
    PlanarGraph g = cycle_graph(2);
    CHECK(g.face_count() == 2);
    auto res = face_inversion(g, std::nullopt, false);
    REQUIRE(validate_rule(res.spec).ok());
    CompiledSpec cs = compile_rule(res.spec);
    LeveledComplex lc = level_complex(cs, 0);
    MarkedSet m;
    m.points = {0, 1};
    m.fatou = {false, false};
    WordChart ch = build_word_chart(cs, lc, m);
    CHECK(ch.generator_names.size() == 1);
    // the unique non-tree dual arc carries x^{+-1}
    int nontrivial = 0;
    for (const auto& w : ch.arc_word)
        if (!w.trivial()) {
            nontrivial++;
            CHECK(cyclic_reduce(w).size() == 1);
        }
    CHECK(nontrivial == 1);
    check_chart_invariants(cs, lc, m);
}

TEST_CASE("chart invariants over the corpus") {
    std::vector<FsrSpec> specs{fsrtest::tri2_rule(), fsrtest::pillow2x2_rule(),
                               fsrtest::expansion_rule(),
                               face_inversion(theta_graph(), std::nullopt, true).spec,
                               blowup_rule(path_edge_graph()),
                               blowup_rule(triangle_with_pendant_graph())};
    for (const auto& spec : specs) {
        CompiledSpec cs = compile_rule(spec);
        MarkedSet m = marked_closure(cs, {});
        if (m.points.size() < 2) continue;
        for (int n = 0; n <= 2; ++n) {
            LeveledComplex lc = level_complex(cs, n);
            check_chart_invariants(cs, lc, m);
        }
    }
}

TEST_CASE("curve words: vertex stars and homotopy invariance") {
    CompiledSpec cs = compile_rule(fsrtest::tri2_rule());
    LeveledComplex lc = level_complex(cs, 1);
    MarkedSet m = marked_closure(cs, {});
    REQUIRE(m.points.size() >= 2);
    WordChart ch = build_word_chart(cs, lc, m);

    SUBCASE("empty sequence is the identity") {
        CHECK(curve_word(ch, lc, {}).trivial());
    }

    SUBCASE("star sequences around vertices") {
        for (size_t v = 0; v < lc.vertices.size(); ++v) {
            std::vector<std::pair<int, Dir>> seq;
            for (const auto& c : lc.vertex_rotation[v]) {
                Dir d = c.from_slot == ch.left_slot[c.edge] ? 1 : -1;
                seq.push_back({c.edge, d});
            }
            Word w = curve_word(ch, lc, seq);
            int p0 = lc.vertices[v].p0_vertex;
            if (p0 >= 0 && m.contains(p0)) {
                Word cyc = cyclic_reduce(w);
                if (p0 != ch.root_marked)
                    CHECK(cyc == ch.peripheral.at(p0));
                else
                    CHECK(cyclically_equal(cyc, cyclic_reduce(ch.peripheral.at(p0))));
            } else {
                CHECK(w.trivial());
            }
        }
    }

    SUBCASE("double crossings cancel") {
        // take a star sequence and insert a back-and-forth crossing
        std::mt19937_64 rng(3);
        for (size_t v = 0; v < lc.vertices.size(); ++v) {
            std::vector<std::pair<int, Dir>> seq;
            for (const auto& c : lc.vertex_rotation[v]) {
                Dir d = c.from_slot == ch.left_slot[c.edge] ? 1 : -1;
                seq.push_back({c.edge, d});
            }
            if (seq.empty()) continue;
            Word base = curve_word(ch, lc, seq);
            // pick an edge of the face entered after the first crossing
            auto [e0, d0] = seq[0];
            int to_face = lc.edges[e0].slots[d0 > 0 ? 1 - ch.left_slot[e0] : ch.left_slot[e0]].first;
            // find an edge on that face and cross it back and forth
            int e2 = lc.tiles[to_face].side_edge[0];
            Dir d2 = lc.edges[e2].slots[ch.left_slot[e2]].first == to_face ? 1 : -1;
            std::vector<std::pair<int, Dir>> seq2{seq[0], {e2, d2}, {e2, static_cast<Dir>(-d2)}};
            seq2.insert(seq2.end(), seq.begin() + 1, seq.end());
            CHECK(curve_word(ch, lc, seq2) == base);
        }
    }

    SUBCASE("non-adjacent crossings are rejected") {
        // find two edges with no common face
        for (size_t e1 = 0; e1 < lc.edges.size(); ++e1)
            for (size_t e2 = 0; e2 < lc.edges.size(); ++e2) {
                std::set<int> f1{lc.edges[e1].slots[0].first, lc.edges[e1].slots[1].first};
                if (f1.count(lc.edges[e2].slots[0].first) ||
                    f1.count(lc.edges[e2].slots[1].first))
                    continue;
                CHECK_THROWS_AS(curve_word(ch, lc, {{static_cast<int>(e1), 1},
                                                    {static_cast<int>(e2), 1}}),
                                std::invalid_argument);
                return;
            }
    }
}

TEST_CASE("face-swap invariance: sliding across a star gives conjugate words") {
    CompiledSpec cs = compile_rule(fsrtest::pillow2x2_rule());
    LeveledComplex lc = level_complex(cs, 1);
    MarkedSet m = marked_closure(cs, {});
    WordChart ch = build_word_chart(cs, lc, m);
    // a closed walk through a face corridor versus the walk slid across an
    // unmarked vertex star: compose star relation into the sequence
    for (size_t v = 0; v < lc.vertices.size(); ++v) {
        int p0 = lc.vertices[v].p0_vertex;
        if (p0 >= 0 && m.contains(p0)) continue;  // unmarked only
        const auto& rot = lc.vertex_rotation[v];
        if (rot.size() < 3) continue;
        // walk A: crossings 0..k-1 of the star (the full loop, identity)
        // walk B: first half, then the reversed second half backwards --
        // the same curve slid across v
        size_t half = rot.size() / 2;
        Word first_half, second_half;
        for (size_t i = 0; i < rot.size(); ++i) {
            Word w = ch.crossing_word(lc, rot[i].edge, rot[i].from_slot);
            if (i < half)
                first_half = concat(first_half, w);
            else
                second_half = concat(second_half, w);
        }
        // the full star is trivial, so the first half equals the inverse of
        // the second: the open arc slid across the unmarked vertex
        CHECK(first_half == inverse(second_half));
        break;
    }
}
