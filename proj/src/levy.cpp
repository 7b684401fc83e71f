#include "fsr/levy.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fsr/rulegraphs.hpp"
#include "fsr/subdivide.hpp"

namespace fsr {

GateGraph build_gate_graph(const TrainTrack& tt) {
    GateGraph g;
    g.nodes.resize(2 * tt.edges.size());
    for (size_t e = 0; e < tt.edges.size(); ++e) {
        g.nodes[2 * e] = {static_cast<int>(e), 0};
        g.nodes[2 * e + 1] = {static_cast<int>(e), 1};
    }
    g.out.resize(g.nodes.size());
    // turns at each vertex
    for (size_t v = 0; v < tt.vertices.size(); ++v) {
        // incident ends
        std::vector<std::pair<int, int>> ends;
        for (size_t e = 0; e < tt.edges.size(); ++e)
            for (int end = 0; end < 2; ++end)
                if (tt.edges[e].v[end] == static_cast<int>(v)) ends.push_back({static_cast<int>(e), end});
        for (auto [e1, end1] : ends)
            for (auto [e2, end2] : ends) {
                if (e1 == e2 && end1 == end2) continue;
                int g1 = tt.gate_of(static_cast<int>(v), e1, end1);
                int g2 = tt.gate_of(static_cast<int>(v), e2, end2);
                if (g1 == g2) continue;
                // arrive along e1 into end1, depart along e2 from end2
                int from = g.node_id(e1, end1 == 1 ? 0 : 1);  // direction heading into v
                int to = g.node_id(e2, end2 == 0 ? 0 : 1);    // direction leaving v
                GateGraph::Arc arc{from, to, -1, -1};
                if (tt.vertices[v].kind == TrainTrack::VKind::BoundaryPoint) {
                    arc.cross_edge = tt.vertices[v].anchor_edge;
                    arc.cross_from_slot = tt.edges[e1].end_slot[end1];
                }
                g.arcs.push_back(arc);
                g.out[from].push_back(static_cast<int>(g.arcs.size() - 1));
            }
    }
    return g;
}

EssentialityVerdict essential_on(const CompiledSpec& cs, const MarkedSet& marked,
                                 const LeveledComplex& lc, const TrainTrack& tt,
                                 const WordChart& chart) {
    (void)cs;
    EssentialityVerdict verdict;
    verdict.spine_empty = tt.empty();
    if (tt.empty()) return verdict;

    GateGraph gg = build_gate_graph(tt);

    // gate-graph SCCs via the Digraph machinery
    std::vector<std::string> labels;
    for (size_t i = 0; i < gg.nodes.size(); ++i) labels.push_back("n" + std::to_string(i));
    Digraph dg(labels);
    for (const auto& a : gg.arcs) dg.add_arc(a.from, a.to);
    dg.finalize();

    // arc words
    auto arc_word_of = [&](const GateGraph::Arc& a) -> Word {
        if (a.cross_edge < 0) return Word();
        return chart.crossing_word(lc, a.cross_edge, a.cross_from_slot);
    };

    // per SCC with arcs: fold the subgroup of based cycle classes
    std::vector<Word> julia_words;
    for (size_t i = 0; i < marked.points.size(); ++i) {
        if (marked.fatou[i]) continue;
        julia_words.push_back(chart.peripheral.at(marked.points[i]));
    }

    for (int c = 0; c < dg.scc_count(); ++c) {
        if (!dg.scc_has_arc(c)) continue;
        SccVerdict sv;
        sv.nodes = dg.scc_nodes(c);
        int base = sv.nodes.front();
        // out-arborescence transports within the SCC
        std::map<int, Word> transport;
        transport[base] = Word();
        std::deque<int> q{base};
        while (!q.empty()) {
            int n = q.front();
            q.pop_front();
            for (int ai : gg.out[n]) {
                const auto& a = gg.arcs[ai];
                if (dg.scc_of(a.to) != c || transport.count(a.to)) continue;
                transport[a.to] = concat(transport[n], arc_word_of(a));
                q.push_back(a.to);
            }
        }
        // fundamental cycle generators
        std::vector<Word> gens;
        for (int n : sv.nodes)
            for (int ai : gg.out[n]) {
                const auto& a = gg.arcs[ai];
                if (dg.scc_of(a.to) != c) continue;
                Word w = concat(concat(transport.at(n), arc_word_of(a)),
                                inverse(transport.at(a.to)));
                if (!w.trivial()) gens.push_back(w);
            }
        int alphabet = static_cast<int>(chart.generator_names.size());
        CoreGraph core = CoreGraph::fold_subgroup(gens, std::max(alphabet, 1));
        sv.rank = core.rank();
        sv.core = core;
        if (sv.rank == 0) {
            sv.cls = SccClass::Trivial;
        } else if (sv.rank == 1) {
            Word gen = sv.core.cyclic_generator();
            bool peripheral = false;
            for (const Word& rho : julia_words) {
                if (cyclic_reduce(rho).trivial()) continue;
                if (conjugate_power_of(gen, rho)) {
                    peripheral = true;
                    break;
                }
            }
            sv.cls = peripheral ? SccClass::JuliaPeripheral : SccClass::Essential;
            sv.witness = gen;
        } else {
            sv.cls = SccClass::Essential;
            // witness: product of two non-commuting generators
            for (size_t i = 0; i < gens.size() && !sv.witness; ++i)
                for (size_t j = i + 1; j < gens.size() && !sv.witness; ++j)
                    if (!(concat(gens[i], gens[j]) == concat(gens[j], gens[i])))
                        sv.witness = concat(gens[i], gens[j]);
            if (!sv.witness && !gens.empty()) sv.witness = gens.front();
        }
        if (sv.cls == SccClass::Essential) verdict.essential = true;
        verdict.sccs.push_back(std::move(sv));
    }
    return verdict;
}

EssentialityVerdict essential(const CompiledSpec& cs, const MarkedSet& marked, int n, long cap) {
    LeveledComplex lc = level_complex(cs, n, cap);
    Digraph bcal = build_band_graph(cs);
    TrainTrack tt = build_spine(cs, lc, bcal);
    if (tt.empty()) {
        EssentialityVerdict v;
        v.spine_empty = true;
        return v;
    }
    WordChart chart = build_word_chart(cs, lc, marked);
    return essential_on(cs, marked, lc, tt, chart);
}

int LevyReport::exit_code() const {
    switch (status) {
        case LevyStatus::NoLevyCycle:
            return 0;
        case LevyStatus::LevyCycleExists:
            return 2;
        case LevyStatus::Inconclusive:
            return 3;
    }
    return 70;
}

std::string LevyReport::to_json() const {
    nlohmann::json j;
    j["status"] = status == LevyStatus::NoLevyCycle
                      ? "NoLevyCycle"
                      : (status == LevyStatus::LevyCycleExists ? "LevyCycleExists"
                                                               : "Inconclusive");
    if (certificate_level >= 0) j["certificate_level"] = certificate_level;
    j["growth"] = polynomial_growth ? "polynomial" : "exponential";
    j["per_level"] = nlohmann::json::array();
    for (const auto& v : per_level) {
        nlohmann::json jl;
        jl["essential"] = v.essential;
        jl["spine_empty"] = v.spine_empty;
        jl["sccs"] = nlohmann::json::array();
        for (const auto& s : v.sccs) {
            nlohmann::json js;
            js["rank"] = s.rank;
            js["class"] = s.cls == SccClass::Trivial
                              ? "trivial"
                              : (s.cls == SccClass::JuliaPeripheral ? "julia-peripheral"
                                                                    : "essential");
            if (s.witness) js["witness"] = to_string(*s.witness);
            jl["sccs"].push_back(js);
        }
        j["per_level"].push_back(jl);
    }
    j["statements"] = statements;
    j["warnings"] = warnings;
    return j.dump(2) + "\n";
}

LevyReport detect_levy(const CompiledSpec& cs, const MarkedSet& marked, int max_level, long cap) {
    if (cs.degree < 2)
        throw std::invalid_argument("degree>1 required for the Levy decision procedure");
    LevyReport rep;

    // torus-endomorphism heuristic
    {
        Portrait p = critical_portrait(cs);
        bool all_julia = true;
        for (size_t i = 0; i < marked.points.size(); ++i) all_julia = all_julia && !marked.fatou[i];
        bool all_deg2 = true;
        for (const auto& [label, deg] : p.level1_degrees)
            if (deg >= 2 && deg != 2) all_deg2 = false;
        if (marked.points.size() == 4 && all_julia && all_deg2)
            rep.warnings.push_back(
                "map may be doubly covered by a torus endomorphism (heuristic); the "
                "equivalence theorems assume it is not");
    }

    Digraph ecal = build_edge_graph(cs);
    auto [entropy_zero, wit] = ecal.entropy_is_zero();
    rep.polynomial_growth = entropy_zero;

    if (rep.polynomial_growth) {
        EssentialityVerdict v = essential(cs, marked, 0, cap);
        rep.per_level.push_back(v);
        if (v.essential) {
            rep.status = LevyStatus::LevyCycleExists;
            rep.statements.push_back(
                "polynomial growth of edge subdivisions: a Levy cycle exists, equivalently a "
                "Thurston obstruction exists");
        } else {
            rep.status = LevyStatus::NoLevyCycle;
            rep.certificate_level = 0;
            rep.statements.push_back(
                "polynomial growth of edge subdivisions and non-essential level-0 spine: no "
                "Thurston obstruction; the map is combinatorially equivalent to a unique "
                "rational map up to Moebius conjugation");
        }
        return rep;
    }

    for (int n = 0; n <= max_level; ++n) {
        EssentialityVerdict v = essential(cs, marked, n, cap);
        rep.per_level.push_back(v);
        if (!v.essential) {
            rep.status = LevyStatus::NoLevyCycle;
            rep.certificate_level = n;
            return rep;
        }
    }
    rep.status = LevyStatus::Inconclusive;
    return rep;
}

ExpansionEstimate expansion_report(const CompiledSpec& cs, int n_max, long cap) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    ExpansionEstimate est;
    auto bands = all_bands(cs);
    Digraph ecal = build_edge_graph(cs);
    est.nu = ecal.spectral_radius();

    for (int n = 0; n <= n_max; ++n) {
        std::vector<int> L(bands.size(), -1);
        // one polygon complex per tile type
        for (size_t t = 0; t < cs.spec.tile_types.size(); ++t) {
            LeveledComplex lc = tile_complex(cs, static_cast<int>(t), n, cap);
            // dual adjacency through interior edges
            int nt = static_cast<int>(lc.tiles.size());
            std::vector<std::vector<int>> adj(nt);
            for (const auto& e : lc.edges) {
                if (e.slots.size() != 2) continue;
                adj[e.slots[0].first].push_back(e.slots[1].first);
                adj[e.slots[1].first].push_back(e.slots[0].first);
            }
            // faces adjacent to each polygon side
            int ar = cs.spec.tile_types[t].arity();
            std::vector<std::set<int>> side_faces(ar);
            for (int ti = 0; ti < nt; ++ti)
                for (size_t m = 0; m < lc.tiles[ti].side_edge.size(); ++m)
                    if (lc.tiles[ti].side_anchor[m] >= 0)
                        side_faces[lc.tiles[ti].side_anchor[m]].insert(ti);
            for (size_t b = 0; b < bands.size(); ++b) {
                if (bands[b].tile != static_cast<int>(t)) continue;
                // BFS from side_a faces to side_b faces
                std::deque<int> q;
                std::vector<int> dist(nt, -1);
                for (int f : side_faces[bands[b].side_a]) {
                    dist[f] = 0;
                    q.push_back(f);
                }
                int best = -1;
                while (!q.empty()) {
                    int f = q.front();
                    q.pop_front();
                    if (side_faces[bands[b].side_b].count(f)) {
                        best = dist[f];
                        break;
                    }
                    for (int f2 : adj[f])
                        if (dist[f2] == -1) {
                            dist[f2] = dist[f] + 1;
                            q.push_back(f2);
                        }
                }
                if (best < 0) throw std::logic_error("band sides not connected in the tile");
                L[b] = best + 1;
            }
        }
        est.lengths.push_back(L);
        if (n >= 1) {
            int mn = *std::min_element(L.begin(), L.end());
            est.lambda_hat.push_back(std::pow(static_cast<double>(mn), 1.0 / n));
        }
    }
    est.lambda_exceeds_nu = !est.lambda_hat.empty() && est.lambda_hat.back() > est.nu;
    return est;
}

}  // namespace fsr
