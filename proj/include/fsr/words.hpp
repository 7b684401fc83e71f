#pragma once

#include <optional>
#include <string>
#include <vector>

namespace fsr {

// A word over a free group. Letters are nonzero ints: +k is generator k-1,
// -k its inverse. Words are kept freely reduced by the operations below.
struct Word {
    std::vector<int> letters;

    Word() = default;
    explicit Word(std::vector<int> ls) : letters(std::move(ls)) {}

    bool trivial() const { return letters.empty(); }
    size_t size() const { return letters.size(); }
    bool operator==(const Word& o) const { return letters == o.letters; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    bool operator<(const Word& o) const { return letters < o.letters; }
};

// Free reduction: cancel adjacent inverse pairs.
Word reduce(const Word& w);

// Product of already-reduced words, reduced.
Word concat(const Word& a, const Word& b);

Word inverse(const Word& w);

// Cyclic reduction of a reduced word.
Word cyclic_reduce(const Word& w);

// reduced + cyclically reduced forms in one call.
std::pair<Word, Word> word_normalize(const Word& w);

bool cyclically_equal(const Word& a, const Word& b);  // equal up to rotation

// Nonzero k with w conjugate to base^k, if any. Requires base nontrivial;
// trivial w yields nullopt.
std::optional<long> conjugate_power_of(const Word& w, const Word& base);

std::string to_string(const Word& w, const std::vector<std::string>& names);
std::string to_string(const Word& w);

}  // namespace fsr
