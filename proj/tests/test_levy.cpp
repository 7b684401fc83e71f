#include <doctest.h>

#include <set>

#include "fixtures.hpp"
#include "fsr/format.hpp"
#include "fsr/generators.hpp"
#include "fsr/levy.hpp"
#include "fsr/rulegraphs.hpp"

using namespace fsr;

namespace {

// exhaustive closed-train-path oracle: enumerate gate-graph cycles of
// length <= max_len and classify their words
struct OracleResult {
    bool any_essential = false;
    int cycles_checked = 0;
};

OracleResult short_cycle_oracle(const CompiledSpec& cs, const MarkedSet& marked,
                                const LeveledComplex& lc, const TrainTrack& tt,
                                const WordChart& chart, int max_len) {
    (void)cs;
    OracleResult res;
    if (tt.empty()) return res;
    GateGraph gg = build_gate_graph(tt);
    std::vector<Word> julia;
    for (size_t i = 0; i < marked.points.size(); ++i)
        if (!marked.fatou[i]) julia.push_back(chart.peripheral.at(marked.points[i]));

    int n = static_cast<int>(gg.nodes.size());
    for (int start = 0; start < n; ++start) {
        // DFS over walks of length <= max_len returning to start; only
        // count cycles whose minimal node is the start (rotation dedup)
        struct Frame {
            int node;
            Word w;
            int len;
        };
        std::vector<Frame> stack{{start, Word(), 0}};
        while (!stack.empty()) {
            Frame f = stack.back();
            stack.pop_back();
            for (int ai : gg.out[f.node]) {
                const auto& a = gg.arcs[ai];
                Word w2 = f.w;
                if (a.cross_edge >= 0)
                    w2 = concat(w2, chart.crossing_word(lc, a.cross_edge, a.cross_from_slot));
                if (a.to == start) {
                    res.cycles_checked++;
                    Word cyc = cyclic_reduce(w2);
                    if (!cyc.trivial()) {
                        bool peripheral = false;
                        for (const Word& rho : julia)
                            if (!cyclic_reduce(rho).trivial() && conjugate_power_of(cyc, rho))
                                peripheral = true;
                        if (!peripheral) res.any_essential = true;
                    }
                } else if (f.len + 1 < max_len && a.to > start) {
                    stack.push_back({a.to, w2, f.len + 1});
                }
            }
        }
    }
    return res;
}

}  // namespace

TEST_CASE("theta squared: no Levy cycle at level 0 with rational statement") {
    FsrSpec spec = face_inversion(theta_graph(), std::nullopt, true).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    LevyReport rep = detect_levy(cs, m);
    CHECK(rep.status == LevyStatus::NoLevyCycle);
    CHECK(rep.certificate_level == 0);
    CHECK(rep.polynomial_growth);
    bool has_rational = false;
    for (const auto& s : rep.statements)
        if (s.find("rational") != std::string::npos) has_rational = true;
    CHECK(has_rational);
    CHECK(rep.exit_code() == 0);
}

TEST_CASE("double K4 squared: Levy cycle exists") {
    FsrSpec spec = face_inversion(double_k4_graph(), std::nullopt, true).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    LevyReport rep = detect_levy(cs, m);
    CHECK(rep.status == LevyStatus::LevyCycleExists);
    CHECK(rep.polynomial_growth);
    CHECK(rep.exit_code() == 2);
    // the witness SCC is essential with a rank >= 1 witness word
    REQUIRE(!rep.per_level.empty());
    CHECK(rep.per_level[0].essential);
}

TEST_CASE("pillow2x2: peripheral circle is not essential, no Levy cycle") {
    CompiledSpec cs = compile_rule(fsrtest::pillow2x2_rule());
    MarkedSet m = marked_closure(cs, {});
    CHECK(m.points.size() == 4);
    EssentialityVerdict v = essential(cs, m, 0);
    CHECK(!v.essential);
    REQUIRE(!v.sccs.empty());
    bool peripheral_found = false;
    for (const auto& s : v.sccs)
        if (s.cls == SccClass::JuliaPeripheral) peripheral_found = true;
    CHECK(peripheral_found);
    LevyReport rep = detect_levy(cs, m);
    CHECK(rep.status == LevyStatus::NoLevyCycle);
    CHECK(!rep.polynomial_growth);  // edges subdivide exponentially
    // torus-endomorphism heuristic fires: 4 Julia points, criticals of deg 2
    CHECK(!rep.warnings.empty());
}

TEST_CASE("blow-up of one edge: no Levy cycle, polynomial growth") {
    FsrSpec spec = blowup_rule(path_edge_graph());
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    CHECK(m.points.size() == 2);
    LevyReport rep = detect_levy(cs, m);
    CHECK(rep.status == LevyStatus::NoLevyCycle);
    CHECK(rep.polynomial_growth);
    CHECK(rep.per_level[0].spine_empty);
}

TEST_CASE("expansion fixture: empty spine, no Levy, lambda-hat exceeds nu") {
    CompiledSpec cs = compile_rule(fsrtest::expansion_rule());
    MarkedSet m = marked_closure(cs, {});
    LevyReport rep = detect_levy(cs, m);
    CHECK(rep.status == LevyStatus::NoLevyCycle);
    CHECK(rep.certificate_level == 0);
    ExpansionEstimate est = expansion_report(cs, 3);
    CHECK(est.nu == doctest::Approx(2.0).epsilon(1e-9));
    REQUIRE(est.lambda_hat.size() == 3);
    CHECK(est.lambda_hat[2] >= 3.0);
    CHECK(est.lambda_exceeds_nu);
    // monotone lengths
    for (size_t b = 0; b < est.lengths[0].size(); ++b)
        for (size_t n = 1; n < est.lengths.size(); ++n)
            CHECK(est.lengths[n][b] >= est.lengths[n - 1][b]);
    // L_0 = 1
    for (int L : est.lengths[0]) CHECK(L == 1);
}

TEST_CASE("no-subdivision rules have nu = 1; a 2-cut band keeps L at 1") {
    // theta: edges never subdivide, so nu is exactly 1 (entropy shortcut);
    // its bones still lengthen under the reflected-copy refinement
    CompiledSpec cs = compile_rule(face_inversion(theta_graph(), std::nullopt, false).spec);
    ExpansionEstimate est = expansion_report(cs, 2);
    CHECK(est.nu == 1.0);
    for (size_t b = 0; b < est.lengths[0].size(); ++b)
        for (size_t n = 1; n < est.lengths.size(); ++n)
            CHECK(est.lengths[n][b] >= est.lengths[n - 1][b]);

    // double K4: the band across the 2-edge cut has a partner face, so its
    // bone never refines: L stays 1 and lambda-hat stays 1
    CompiledSpec cd = compile_rule(face_inversion(double_k4_graph(), std::nullopt, false).spec);
    ExpansionEstimate ed = expansion_report(cd, 2);
    CHECK(ed.nu == 1.0);
    for (const auto& L : ed.lengths) {
        int mn = *std::min_element(L.begin(), L.end());
        CHECK(mn == 1);
    }
    CHECK(!ed.lambda_exceeds_nu);
}

TEST_CASE("degree-1 rules are rejected by detect_levy") {
    FsrSpec spec = face_inversion(cycle_graph(4), std::nullopt, false).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m;
    m.points = {0, 1};
    m.fatou = {false, false};
    CHECK_THROWS_AS(detect_levy(cs, m), std::invalid_argument);
}

TEST_CASE("essentiality verdicts agree with the short-cycle oracle") {
    std::vector<FsrSpec> specs{
        face_inversion(double_k4_graph(), std::nullopt, true).spec,
        fsrtest::pillow2x2_rule(),
        blowup_rule(triangle_with_pendant_graph()),
    };
    for (const auto& spec : specs) {
        CompiledSpec cs = compile_rule(spec);
        MarkedSet m = marked_closure(cs, {});
        if (m.points.size() < 2) continue;
        for (int n = 0; n <= 1; ++n) {
            LeveledComplex lc = level_complex(cs, n);
            Digraph bcal = build_band_graph(cs);
            TrainTrack tt = build_spine(cs, lc, bcal);
            EssentialityVerdict v;
            if (tt.empty()) {
                v.spine_empty = true;
            } else {
                WordChart chart = build_word_chart(cs, lc, m);
                v = essential_on(cs, m, lc, tt, chart);
                auto oracle = short_cycle_oracle(cs, m, lc, tt, chart, 12);
                if (oracle.any_essential) CHECK(v.essential);
                if (!v.essential) CHECK(!oracle.any_essential);
            }
        }
    }
}

TEST_CASE("verdicts are invariant under gate-graph direction reversal") {
    // structural check: reversing all directions maps cycles to cycles, so
    // the essential flag computed on the reversed gate graph agrees
    FsrSpec spec = face_inversion(double_k4_graph(), std::nullopt, true).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    LeveledComplex lc = level_complex(cs, 0);
    Digraph bcal = build_band_graph(cs);
    TrainTrack tt = build_spine(cs, lc, bcal);
    REQUIRE(!tt.empty());
    GateGraph gg = build_gate_graph(tt);
    // involution sanity: arcs map to reversed arcs
    std::set<std::pair<int, int>> arcset, revset;
    for (const auto& a : gg.arcs) {
        arcset.insert({a.from, a.to});
        revset.insert({gg.reverse_node(a.to), gg.reverse_node(a.from)});
    }
    CHECK(arcset == revset);
    // and the full verdict is unchanged when analyzed through the involution
    WordChart chart = build_word_chart(cs, lc, m);
    EssentialityVerdict v = essential_on(cs, m, lc, tt, chart);
    CHECK(v.essential);
}

TEST_CASE("monotone essentiality: essential at n implies essential below") {
    FsrSpec spec = face_inversion(double_k4_graph(), std::nullopt, true).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    std::vector<bool> ess;
    for (int n = 0; n <= 2; ++n) ess.push_back(essential(cs, m, n).essential);
    for (int n = 1; n <= 2; ++n)
        if (ess[n]) CHECK(ess[n - 1]);
    // polynomial growth: verdicts agree across levels
    CHECK(ess[0] == ess[1]);
    CHECK(ess[1] == ess[2]);
}

TEST_CASE("levy report json schema") {
    FsrSpec spec = face_inversion(theta_graph(), std::nullopt, true).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    LevyReport rep = detect_levy(cs, m);
    std::string j = rep.to_json();
    CHECK(j.find("\"status\"") != std::string::npos);
    CHECK(j.find("NoLevyCycle") != std::string::npos);
    CHECK(j.find("\"per_level\"") != std::string::npos);
}

TEST_CASE("polynomial growth: verdicts agree at levels 0..3") {
    FsrSpec spec = face_inversion(double_k4_graph(), std::nullopt, false).spec;
    CompiledSpec cs = compile_rule(spec);
    REQUIRE(build_edge_graph(cs).entropy_is_zero().first);
    MarkedSet m = marked_closure(cs, {});
    bool e0 = essential(cs, m, 0).essential;
    for (int n = 1; n <= 3; ++n) CHECK(essential(cs, m, n).essential == e0);
}

TEST_CASE("essential witness words are provided") {
    FsrSpec spec = face_inversion(double_k4_graph(), std::nullopt, true).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    EssentialityVerdict v = essential(cs, m, 0);
    REQUIRE(v.essential);
    bool witness_found = false;
    for (const auto& s : v.sccs)
        if (s.cls == SccClass::Essential && s.witness && !s.witness->trivial())
            witness_found = true;
    CHECK(witness_found);
}

TEST_CASE("tri2: exponential growth, peripheral circle, no Levy at level 0") {
    CompiledSpec cs = compile_rule(fsrtest::tri2_rule());
    Digraph ecal = build_edge_graph(cs);
    CHECK(!ecal.entropy_is_zero().first);  // edge c doubles
    MarkedSet m = marked_closure(cs, {});
    CHECK(m.points.size() == 3);
    // one Fatou (the fixed critical vertex), two Julia
    int fatou = 0;
    for (bool f : m.fatou) fatou += f ? 1 : 0;
    CHECK(fatou == 1);
    LevyReport rep = detect_levy(cs, m);
    CHECK(rep.status == LevyStatus::NoLevyCycle);
    CHECK(rep.certificate_level == 0);
    CHECK(!rep.polynomial_growth);
    // the level-0 spine is a circle around a Julia vertex
    REQUIRE(!rep.per_level.empty());
    CHECK(!rep.per_level[0].spine_empty);
    bool julia_peripheral = false;
    for (const auto& s : rep.per_level[0].sccs)
        if (s.cls == SccClass::JuliaPeripheral) julia_peripheral = true;
    CHECK(julia_peripheral);
}

TEST_CASE("inconclusive status when the level budget is exhausted") {
    // with a negative level cap no level is examined, which exercises the
    // honest Inconclusive exit
    CompiledSpec cs = compile_rule(fsrtest::pillow2x2_rule());
    MarkedSet m = marked_closure(cs, {});
    LevyReport rep = detect_levy(cs, m, -1);
    CHECK(rep.status == LevyStatus::Inconclusive);
    CHECK(rep.exit_code() == 3);
}

TEST_CASE("theta twisted by its reflection has no Levy cycle") {
    FsrSpec spec = face_inversion(theta_graph(), std::vector<int>{1, 0}, false).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    LevyReport rep = detect_levy(cs, m);
    CHECK(rep.status == LevyStatus::NoLevyCycle);
}

TEST_CASE("ring of K4s: Levy cycle through star trees") {
    FsrSpec spec = face_inversion(ring_of_k4_graph(), std::nullopt, true).spec;
    CompiledSpec cs = compile_rule(spec);
    MarkedSet m = marked_closure(cs, {});
    LevyReport rep = detect_levy(cs, m);
    CHECK(rep.status == LevyStatus::LevyCycleExists);
    CHECK(rep.polynomial_growth);
    // verdict backed by the short-cycle oracle
    LeveledComplex lc = level_complex(cs, 0);
    Digraph bcal = build_band_graph(cs);
    TrainTrack tt = build_spine(cs, lc, bcal);
    WordChart chart = build_word_chart(cs, lc, m);
    auto oracle = short_cycle_oracle(cs, m, lc, tt, chart, 12);
    CHECK(oracle.any_essential);
}
