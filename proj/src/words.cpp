#include "fsr/words.hpp"

#include <algorithm>
#include <stdexcept>

namespace fsr {

Word reduce(const Word& w) {
    std::vector<int> out;
    out.reserve(w.letters.size());
    for (int x : w.letters) {
        if (x == 0) throw std::invalid_argument("zero letter in word");
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return Word(std::move(out));
}

Word concat(const Word& a, const Word& b) {
    std::vector<int> out = a.letters;
    for (int x : b.letters) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return Word(std::move(out));
}

Word inverse(const Word& w) {
    std::vector<int> out(w.letters.rbegin(), w.letters.rend());
    for (int& x : out) x = -x;
    return Word(std::move(out));
}

Word cyclic_reduce(const Word& w) {
    size_t i = 0, j = w.letters.size();
    while (j - i >= 2 && w.letters[i] == -w.letters[j - 1]) {
        ++i;
        --j;
    }
    return Word(std::vector<int>(w.letters.begin() + i, w.letters.begin() + j));
}

std::pair<Word, Word> word_normalize(const Word& w) {
    Word r = reduce(w);
    return {r, cyclic_reduce(r)};
}

bool cyclically_equal(const Word& a, const Word& b) {
    if (a.letters.size() != b.letters.size()) return false;
    size_t n = a.letters.size();
    if (n == 0) return true;
    for (size_t s = 0; s < n; ++s) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i)
            ok = a.letters[(s + i) % n] == b.letters[i];
        if (ok) return true;
    }
    return false;
}

std::optional<long> conjugate_power_of(const Word& w, const Word& base) {
    Word b = cyclic_reduce(reduce(base));
    if (b.trivial()) throw std::invalid_argument("trivial base");
    Word c = cyclic_reduce(reduce(w));
    if (c.trivial()) return std::nullopt;
    if (c.letters.size() % b.letters.size() != 0) return std::nullopt;
    long k = static_cast<long>(c.letters.size() / b.letters.size());
    Word pos, neg;
    Word binv = inverse(b);
    for (long i = 0; i < k; ++i) {
        pos = concat(pos, b);
        neg = concat(neg, binv);
    }
    if (cyclically_equal(c, pos)) return k;
    if (cyclically_equal(c, neg)) return -k;
    return std::nullopt;
}

std::string to_string(const Word& w, const std::vector<std::string>& names) {
    if (w.trivial()) return "1";
    std::string s;
    for (int x : w.letters) {
        size_t idx = static_cast<size_t>(std::abs(x)) - 1;
        if (!s.empty()) s += " ";
        s += idx < names.size() ? names[idx] : ("g" + std::to_string(idx));
        if (x < 0) s += "^-1";
    }
    return s;
}

std::string to_string(const Word& w) { return to_string(w, {}); }

}  // namespace fsr
