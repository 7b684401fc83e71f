#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <thread>

#include "fsr/format.hpp"
#include "fsr/generators.hpp"
#include "fsr/levy.hpp"
#include "fsr/pi1.hpp"
#include "fsr/rulegraphs.hpp"
#include "fsr/spine.hpp"
#include "fsr/subdivide.hpp"

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitParse = 65;
constexpr int kExitInternal = 70;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw fsr::ParseError("cannot open file " + path, 0, 0);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fsr::FsrSpec load_spec(const std::string& path) {
    std::string text = slurp(path);
    if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
        return fsr::fsr_from_json(text);
    return fsr::parse_fsr(text);
}

fsr::MarkedSet marked_from_flag(const fsr::CompiledSpec& cs, const std::string& flag) {
    std::vector<int> seed;
    std::stringstream ss(flag);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        seed.push_back(std::stoi(tok));
    }
    return fsr::marked_closure(cs, seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite subdivision rules: Levy cycle detection toolkit"};
    app.require_subcommand(1);

    std::string file, out, marked_flag, graph_file, tau_flag;
    std::vector<std::string> levy_files;
    int level = 0, max_level = 12, n_max = 3, jobs = 1;
    bool want_dot = false, want_json = false, want_svg = false, square = false;

    auto* validate = app.add_subcommand("validate", "validate a rule file");
    validate->add_option("file", file)->required();

    auto* info = app.add_subcommand("info", "degree, portrait, growth, entropy, nu");
    info->add_option("file", file)->required();

    auto* spine = app.add_subcommand("spine", "build the level-n non-expanding spine");
    spine->add_option("file", file)->required();
    spine->add_option("--level", level)->default_val(0);
    spine->add_flag("--dot", want_dot);
    spine->add_flag("--json", want_json);
    spine->add_flag("--svg", want_svg);

    auto* levy = app.add_subcommand("levy", "decide Levy cycle existence");
    levy->add_option("files", levy_files)->required();
    levy->add_option("--max-level", max_level)->default_val(12);
    levy->add_option("--marked", marked_flag);
    levy->add_option("--jobs", jobs)->default_val(1);

    auto* expansion = app.add_subcommand("expansion", "edge-edge expansion estimates");
    expansion->add_option("file", file)->required();
    expansion->add_option("--n-max", n_max)->default_val(3);

    auto* complexcmd = app.add_subcommand("complex", "dump the level-n complex as JSON");
    complexcmd->add_option("file", file)->required();
    complexcmd->add_option("--level", level)->default_val(1);

    auto* chartcmd = app.add_subcommand("chart", "dump the level-n word chart (debug)");
    chartcmd->add_option("file", file)->required();
    chartcmd->add_option("--level", level)->default_val(0);

    auto* generate = app.add_subcommand("generate", "build rules from planar graphs");
    std::string kind;
    generate->add_option("kind", kind)->required()->check(CLI::IsMember({"face-inversion", "blowup"}));
    generate->add_option("--graph", graph_file)->required();
    generate->add_option("--tau", tau_flag);
    generate->add_flag("--square", square);
    generate->add_option("-o,--output", out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (validate->parsed()) {
            fsr::FsrSpec spec = load_spec(file);
            fsr::ValidationReport rep = fsr::validate_rule(spec);
            std::cout << rep.summary() << "\n";
            return rep.ok() ? 0 : 1;
        }
        if (info->parsed()) {
            fsr::FsrSpec spec = load_spec(file);
            fsr::CompiledSpec cs = fsr::compile_rule(spec);
            fsr::Portrait p = fsr::critical_portrait(cs);
            fsr::Digraph ecal = fsr::build_edge_graph(cs);
            fsr::GrowthReport growth = ecal.classify_growth();
            nlohmann::json j;
            j["name"] = spec.name;
            j["degree"] = cs.degree;
            j["tiles"] = spec.tile_types.size();
            j["edges_level0"] = spec.edge_types.size();
            j["vertices"] = cs.level0.vertex_count;
            j["critical"] = p.critical;
            j["postcritical"] = p.postcritical;
            nlohmann::json fatou = nlohmann::json::array();
            for (int v : p.postcritical) fatou.push_back(p.is_fatou[v] ? "fatou" : "julia");
            j["postcritical_class"] = fatou;
            nlohmann::json ge = nlohmann::json::object();
            for (int e = 0; e < ecal.node_count(); ++e) {
                const auto& ng = growth.per_node[e];
                ge[ecal.label(e)] = ng.cls == fsr::GrowthClass::Exponential
                                        ? "exponential"
                                        : "polynomial(" + std::to_string(ng.degree) + ")";
            }
            j["edge_growth"] = ge;
            j["entropy_zero"] = growth.entropy_zero;
            j["nu"] = growth.spectral_radius;
            nlohmann::json sccs = nlohmann::json::array();
            for (const auto& scc : growth.sccs) {
                nlohmann::json js;
                nlohmann::json nodes = nlohmann::json::array();
                for (int v : scc.nodes) nodes.push_back(ecal.label(v));
                js["nodes"] = nodes;
                js["rho"] = scc.spectral_radius;
                js["permutation_block"] = scc.permutation;
                sccs.push_back(js);
            }
            j["sccs"] = sccs;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (spine->parsed()) {
            fsr::FsrSpec spec = load_spec(file);
            fsr::CompiledSpec cs = fsr::compile_rule(spec);
            fsr::LeveledComplex lc = fsr::level_complex(cs, level);
            fsr::Digraph bcal = fsr::build_band_graph(cs);
            fsr::TrainTrack tt = fsr::build_spine(cs, lc, bcal);
            if (want_dot) {
                std::cout << fsr::emit_dot(tt, lc);
            } else if (want_svg) {
                std::cout << fsr::emit_svg(cs, tt, lc);
            } else {
                nlohmann::json j;
                j["level"] = level;
                j["empty"] = tt.empty();
                nlohmann::json vs = nlohmann::json::array();
                for (const auto& vx : tt.vertices) {
                    nlohmann::json jv;
                    jv["kind"] = vx.kind == fsr::TrainTrack::VKind::BoundaryPoint
                                     ? "boundary-point"
                                     : (vx.kind == fsr::TrainTrack::VKind::Zip ? "zip"
                                                                               : "star-center");
                    if (vx.anchor_edge >= 0) {
                        jv["anchor_edge"] = vx.anchor_edge;
                        jv["anchor_level0_edge"] = lc.edges[vx.anchor_edge].p0_edge;
                    }
                    if (vx.anchor_tile >= 0) jv["anchor_level0_tile"] = vx.anchor_tile;
                    jv["gates"] = vx.gates.size();
                    vs.push_back(jv);
                }
                j["vertices"] = vs;
                nlohmann::json es = nlohmann::json::array();
                for (const auto& e : tt.edges) {
                    nlohmann::json je;
                    je["kind"] = e.kind == fsr::TrainTrack::EKind::BoneChord
                                     ? "bone-chord"
                                     : (e.kind == fsr::TrainTrack::EKind::StarSpoke
                                            ? "star-spoke"
                                            : "zip-stub");
                    je["ends"] = {e.v[0], e.v[1]};
                    je["level0_tile"] = e.p0_tile;
                    es.push_back(je);
                }
                j["edges"] = es;
                std::cout << j.dump(2) << "\n";
            }
            return 0;
        }
        if (levy->parsed()) {
            auto analyze = [&](const std::string& path) {
                fsr::FsrSpec spec = load_spec(path);
                fsr::CompiledSpec cs = fsr::compile_rule(spec);
                fsr::MarkedSet m = marked_from_flag(cs, marked_flag);
                return fsr::detect_levy(cs, m, max_level);
            };
            if (levy_files.size() == 1) {
                fsr::LevyReport rep = analyze(levy_files[0]);
                std::cout << rep.to_json();
                return rep.exit_code();
            }
            // batch mode: --jobs parallelizes across inputs
            std::vector<std::future<fsr::LevyReport>> futs;
            int rc = 0;
            size_t next = 0;
            std::vector<fsr::LevyReport> reports(levy_files.size());
            while (next < levy_files.size()) {
                size_t batch = std::min<size_t>(std::max(jobs, 1), levy_files.size() - next);
                futs.clear();
                for (size_t i = 0; i < batch; ++i)
                    futs.push_back(std::async(std::launch::async, analyze,
                                              levy_files[next + i]));
                for (size_t i = 0; i < batch; ++i) reports[next + i] = futs[i].get();
                next += batch;
            }
            for (size_t i = 0; i < levy_files.size(); ++i) {
                std::cout << levy_files[i] << ":\n" << reports[i].to_json();
                rc = std::max(rc, reports[i].exit_code());
            }
            return rc;
        }
        if (complexcmd->parsed()) {
            fsr::FsrSpec spec = load_spec(file);
            fsr::CompiledSpec cs = fsr::compile_rule(spec);
            fsr::LeveledComplex lc = fsr::level_complex(cs, level);
            nlohmann::json j;
            j["level"] = level;
            nlohmann::json vs = nlohmann::json::array();
            for (const auto& v : lc.vertices)
                vs.push_back({{"type_vertex", v.type_vertex},
                              {"parent", v.parent},
                              {"p0_vertex", v.p0_vertex},
                              {"p0_edge", v.p0_edge},
                              {"p0_tile", v.p0_tile}});
            j["vertices"] = vs;
            nlohmann::json es = nlohmann::json::array();
            for (const auto& e : lc.edges)
                es.push_back({{"type", cs.spec.edge_types[e.type].id},
                              {"tail", e.tail},
                              {"head", e.head},
                              {"parent_edge", e.parent_edge},
                              {"parent_tile", e.parent_tile},
                              {"p0_edge", e.p0_edge},
                              {"p0_tile", e.p0_tile}});
            j["edges"] = es;
            nlohmann::json ts = nlohmann::json::array();
            for (const auto& t : lc.tiles) {
                nlohmann::json jt;
                jt["type"] = cs.spec.tile_types[t.type].id;
                jt["parent"] = t.parent;
                jt["p0_tile"] = t.p0_tile;
                jt["side_edges"] = t.side_edge;
                jt["side_anchors"] = t.side_anchor;
                ts.push_back(jt);
            }
            j["tiles"] = ts;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (chartcmd->parsed()) {
            fsr::FsrSpec spec = load_spec(file);
            fsr::CompiledSpec cs = fsr::compile_rule(spec);
            fsr::LeveledComplex lc = fsr::level_complex(cs, level);
            fsr::MarkedSet m = fsr::marked_closure(cs, {});
            fsr::WordChart chart = fsr::build_word_chart(cs, lc, m);
            nlohmann::json j;
            j["generators"] = chart.generator_names;
            j["root_marked"] = chart.root_marked;
            nlohmann::json arcs = nlohmann::json::array();
            for (size_t e = 0; e < chart.arc_word.size(); ++e) {
                const fsr::Word& w = chart.arc_word[e];
                nlohmann::json ja;
                ja["edge"] = e;
                if (w.size() <= 64) {
                    ja["word"] = fsr::to_string(w, chart.generator_names);
                } else {
                    size_t h = std::hash<std::string>{}(fsr::to_string(w));
                    ja["word_truncated"] = fsr::to_string(
                        fsr::Word(std::vector<int>(w.letters.begin(), w.letters.begin() + 16)),
                        chart.generator_names);
                    ja["length"] = w.size();
                    ja["hash"] = h;
                }
                arcs.push_back(ja);
            }
            j["arc_words"] = arcs;
            nlohmann::json per = nlohmann::json::object();
            for (const auto& [a, w] : chart.peripheral)
                per[std::to_string(a)] = fsr::to_string(w, chart.generator_names);
            j["peripheral"] = per;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (expansion->parsed()) {
            fsr::FsrSpec spec = load_spec(file);
            fsr::CompiledSpec cs = fsr::compile_rule(spec);
            fsr::ExpansionEstimate est = fsr::expansion_report(cs, n_max);
            nlohmann::json j;
            j["nu"] = est.nu;
            j["lambda_hat"] = est.lambda_hat;
            j["lengths"] = est.lengths;
            j["lambda_exceeds_nu"] = est.lambda_exceeds_nu;
            j["note"] = est.note;
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (generate->parsed()) {
            fsr::PlanarGraph g = fsr::parse_planar_graph(slurp(graph_file));
            fsr::FsrSpec spec;
            if (kind == "face-inversion") {
                std::optional<std::vector<int>> tau;
                if (!tau_flag.empty()) {
                    std::vector<int> perm;
                    std::stringstream ss(tau_flag);
                    std::string tok;
                    while (std::getline(ss, tok, ',')) perm.push_back(std::stoi(tok));
                    tau = perm;
                }
                auto res = fsr::face_inversion(g, tau, square);
                for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
                spec = res.spec;
            } else {
                spec = fsr::blowup_rule(g);
            }
            std::ofstream os(out);
            os << fsr::serialize_fsr(spec);
            std::cout << "wrote " << out << "\n";
            return 0;
        }
    } catch (const fsr::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        std::cerr << "internal assertion: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitUsage;
}
