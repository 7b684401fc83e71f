#pragma once

#include <string>
#include <vector>

#include "fsr/complex.hpp"
#include "fsr/digraph.hpp"
#include "fsr/model.hpp"
#include "fsr/planar.hpp"
#include "fsr/spine.hpp"

namespace fsr {

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& what, int l, int c)
        : std::runtime_error("line " + std::to_string(l) + ":" + std::to_string(c) + ": " + what),
          line(l),
          column(c) {}
};

FsrSpec parse_fsr(const std::string& text);
std::string serialize_fsr(const FsrSpec& spec);

FsrSpec fsr_from_json(const std::string& text);
std::string fsr_to_json(const FsrSpec& spec);

PlanarGraph parse_planar_graph(const std::string& text);
std::string serialize_planar_graph(const PlanarGraph& g);

struct DotOptions {
    bool cluster_sccs = false;
    std::string name = "g";
};
std::string emit_dot(const Digraph& g, const DotOptions& opt = {});
std::string emit_dot(const PlanarGraph& g, const DotOptions& opt = {});
// Train-track with anchors; gates rendered as grouped ports in the labels.
std::string emit_dot(const TrainTrack& tt, const LeveledComplex& lc, const DotOptions& opt = {});

// Schematic SVG: level-0 tiles drawn as regular polygons in a row, chords
// as straight segments between their designated boundary points.
std::string emit_svg(const CompiledSpec& cs, const TrainTrack& tt, const LeveledComplex& lc);

}  // namespace fsr
