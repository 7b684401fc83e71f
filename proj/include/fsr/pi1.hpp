#pragma once

#include "fsr/complex.hpp"
#include "fsr/model.hpp"
#include "fsr/words.hpp"

namespace fsr {

// Explicit coordinates for pi_1 of the marked sphere: one reduced word per
// directed dual arc of the leveled complex, over peripheral generators
// x_a (a marked, a != a0). Dual-tree arcs carry the identity, so basepoint
// transport is free.
struct WordChart {
    int base_face = 0;
    int root_marked = -1;            // a0 as a level-0 vertex id
    std::vector<int> generator_of;   // per level-0 vertex: generator index or -1
    std::vector<std::string> generator_names;

    // per level-n edge: the word of crossing from slots[left_slot] to the
    // other slot; the reverse crossing is the inverse
    std::vector<Word> arc_word;
    std::vector<int> left_slot;

    // peripheral words: rho[a] per marked level-0 vertex a (x_a for a != a0)
    std::map<int, Word> peripheral;

    // star word of a level-n vertex starting at wedge index start
    Word star_word(const LeveledComplex& lc, int v, int start) const;
    Word crossing_word(const LeveledComplex& lc, int edge, int from_slot) const;

    // diagnostics from construction-time verification
    std::vector<std::string> checks;
};

WordChart build_word_chart(const CompiledSpec& cs, const LeveledComplex& lc,
                           const MarkedSet& marked);

// Word of a closed dual walk given as (edge, +1 for left->right crossing).
// Faces must chain: the to-face of each crossing is the from-face of the
// next, cyclically.
Word curve_word(const WordChart& chart, const LeveledComplex& lc,
                const std::vector<std::pair<int, Dir>>& crossings);

}  // namespace fsr
