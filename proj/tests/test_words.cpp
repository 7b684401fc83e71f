#include <doctest.h>

#include <random>

#include "fsr/words.hpp"

using namespace fsr;

namespace {
Word W(std::initializer_list<int> ls) { return Word(std::vector<int>(ls)); }
}  // namespace

TEST_CASE("free reduction") {
    CHECK(reduce(W({1, 2, -2, -1})).trivial());
    CHECK(reduce(W({1, 2, -2, 1})) == W({1, 1}));
    CHECK(word_normalize(W({1, 2, 2, -2, -1})).first == W({1, 2, -1}));
}

TEST_CASE("cyclic reduction") {
    auto [r, c] = word_normalize(W({-1, 2, 1}));
    CHECK(r == W({-1, 2, 1}));
    CHECK(c == W({2}));
    CHECK(cyclic_reduce(W({1, 2, -1, 2})) == W({1, 2, -1, 2}));
}

TEST_CASE("conjugate powers") {
    // y x^3 y^-1 ~ x^3
    CHECK(conjugate_power_of(W({2, 1, 1, 1, -2}), W({1})) == 3);
    CHECK(conjugate_power_of(W({-1, -1}), W({1})) == -2);
    // y x y^-1 x is not a power of x
    CHECK(!conjugate_power_of(W({2, 1, -2, 1}), W({1})));
    CHECK(!conjugate_power_of(Word(), W({1})));
    CHECK_THROWS(conjugate_power_of(W({1}), Word()));
}

TEST_CASE("conjugacy is rotation of cyclic words") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> gen(1, 2), len(1, 6), sign(0, 1);
    for (int it = 0; it < 200; ++it) {
        std::vector<int> base;
        for (int i = 0, n = len(rng); i < n; ++i)
            base.push_back(gen(rng) * (sign(rng) ? 1 : -1));
        Word b = cyclic_reduce(reduce(Word(base)));
        if (b.trivial()) continue;
        std::vector<int> conj;
        for (int i = 0, n = len(rng); i < n; ++i)
            conj.push_back(gen(rng) * (sign(rng) ? 1 : -1));
        Word u(conj);
        Word w = concat(concat(u, b), inverse(u));
        auto k = conjugate_power_of(w, b);
        REQUIRE(k.has_value());
        CHECK(*k == 1);
    }
}
