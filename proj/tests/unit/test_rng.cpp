#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <vector>

#include "ladlab/rng.hpp"

using ladlab::SeededRng;

TEST_CASE("engine output is the standard mt19937_64 stream") {
    // 10000th output of a default-seeded mt19937_64, fixed by the C++ standard.
    SeededRng rng{5489};
    std::uint64_t v = 0;
    for (int i = 0; i < 10000; ++i) v = rng.next_u64();
    CHECK(v == 9981545732273789042ULL);
}

TEST_CASE("mix64 is one splitmix64 step") {
    // First two outputs of splitmix64 seeded with 0.
    CHECK(ladlab::mix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(ladlab::mix64(0x9e3779b97f4a7c15ULL) == 0x6e789e6aa1b965f4ULL);
}

TEST_CASE("below stays in range and hits every value") {
    SeededRng rng{3};
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const auto v = rng.below(7);
        REQUIRE(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK(rng.below(1) == 0);
}

TEST_CASE("derive depends on the full path, not on call order") {
    const auto a = SeededRng::derive(2024, {1, 2, 3});
    const auto b = SeededRng::derive(2024, {1, 2, 3});
    CHECK(a == b);
    CHECK(SeededRng::derive(2024, {1, 2}) != SeededRng::derive(2024, {2, 1}));
    CHECK(SeededRng::derive(2024, {1}) != SeededRng::derive(2024, {1, 0}));
    CHECK(SeededRng::derive(2024, {0}) != SeededRng::derive(2025, {0}));
    SeededRng parent{2024};
    CHECK(parent.child({1, 2, 3}).seed() == a);

    std::set<std::uint64_t> seeds;
    for (std::uint64_t f = 0; f < 100; ++f)
        for (std::uint64_t s = 0; s < 50; ++s) seeds.insert(SeededRng::derive(2024, {f, s, 10}));
    CHECK(seeds.size() == 5000);
}
