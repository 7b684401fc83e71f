#pragma once

#include "fsr/complex.hpp"
#include "fsr/digraph.hpp"
#include "fsr/model.hpp"
#include "fsr/pi1.hpp"
#include "fsr/spine.hpp"
#include "fsr/stallings.hpp"
#include "fsr/words.hpp"

namespace fsr {

// Directed graph of legal turns: nodes are directed track edges, arcs are
// gate changes. Closed train paths correspond to directed cycles.
struct GateGraph {
    struct Node {
        int edge;
        int dir;  // 0: v[0] -> v[1], 1: reverse
    };
    struct Arc {
        int from, to;
        int cross_edge;  // level-n edge crossed at the turn, or -1
        int cross_from_slot;
    };
    std::vector<Node> nodes;
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out;  // arc indices per node

    int node_id(int edge, int dir) const { return 2 * edge + dir; }
    int reverse_node(int n) const { return n ^ 1; }
};

GateGraph build_gate_graph(const TrainTrack& tt);

enum class SccClass { Trivial, JuliaPeripheral, Essential };

struct SccVerdict {
    std::vector<int> nodes;   // gate-graph nodes
    CoreGraph core;           // folded subgroup of carried cycle classes
    int rank = 0;
    SccClass cls = SccClass::Trivial;
    std::optional<Word> witness;
};

struct EssentialityVerdict {
    bool essential = false;
    std::vector<SccVerdict> sccs;
    bool spine_empty = false;
};

// Essentiality of the level-n non-expanding spine relative to the marked
// set, decided through the folded subgroup of carried-cycle classes.
EssentialityVerdict essential(const CompiledSpec& cs, const MarkedSet& marked, int n,
                              long cap = 10'000'000);

// Variant reusing prebuilt data (level complex, spine, chart).
EssentialityVerdict essential_on(const CompiledSpec& cs, const MarkedSet& marked,
                                 const LeveledComplex& lc, const TrainTrack& tt,
                                 const WordChart& chart);

enum class LevyStatus { NoLevyCycle, LevyCycleExists, Inconclusive };

struct LevyReport {
    LevyStatus status = LevyStatus::Inconclusive;
    int certificate_level = -1;
    bool polynomial_growth = false;
    std::vector<EssentialityVerdict> per_level;
    std::vector<std::string> statements;  // e.g. the rational-map statement
    std::vector<std::string> warnings;
    std::string to_json() const;
    int exit_code() const;
};

LevyReport detect_levy(const CompiledSpec& cs, const MarkedSet& marked, int max_level = 12,
                       long cap = 10'000'000);

struct ExpansionEstimate {
    // L[n][band index] with bands enumerated by all_bands order
    std::vector<std::vector<int>> lengths;
    std::vector<double> lambda_hat;  // per level n >= 1: (min_b L_n)^{1/n}
    double nu = 1.0;
    bool lambda_exceeds_nu = false;
    std::string note = "estimate; supports the sufficient condition only";
};

ExpansionEstimate expansion_report(const CompiledSpec& cs, int n_max, long cap = 10'000'000);

}  // namespace fsr
