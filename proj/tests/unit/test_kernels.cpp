#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <bit>
#include <random>
#include <vector>

#include "ladlab/kernels.hpp"

using namespace ladlab::kernels;

namespace {

std::vector<Word> random_words(std::mt19937_64& g, std::size_t count) {
    std::vector<Word> v(count);
    for (auto& w : v) w = g();
    return v;
}

std::uint64_t naive(const std::vector<Word>& v) {
    std::uint64_t c = 0;
    for (Word w : v)
        for (int b = 0; b < 64; ++b) c += (w >> b) & 1U;
    return c;
}

std::vector<const KernelTable*> available() {
    std::vector<const KernelTable*> out{&scalar_table()};
    if (auto* t = avx2_table()) out.push_back(t);
    if (auto* t = neon_table()) out.push_back(t);
    return out;
}

}  // namespace

TEST_CASE("scalar popcount matches a bit-by-bit count") {
    std::mt19937_64 g{1};
    for (std::size_t words : {0u, 1u, 3u, 4u, 17u, 64u}) {
        const auto a = random_words(g, words);
        CHECK(scalar_table().popcount(a.data(), a.size()) == naive(a));
    }
    const std::vector<Word> ones(5, ~Word{0});
    CHECK(scalar_table().popcount(ones.data(), ones.size()) == 320);
}

TEST_CASE("every compiled variant agrees with scalar on random inputs") {
    std::mt19937_64 g{42};
    const auto& ref = scalar_table();
    for (const KernelTable* t : available()) {
        CAPTURE(t->name);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t words = g() % 70;  // covers vector body and tails
            const auto a = random_words(g, words);
            const auto b = random_words(g, words);
            const auto c = random_words(g, words);
            const auto y = random_words(g, words);
            CHECK(t->popcount(a.data(), words) == ref.popcount(a.data(), words));
            CHECK(t->xor_popcount(a.data(), b.data(), words) == ref.xor_popcount(a.data(), b.data(), words));
            CHECK(t->and3_xor_popcount(a.data(), b.data(), c.data(), y.data(), words) ==
                  ref.and3_xor_popcount(a.data(), b.data(), c.data(), y.data(), words));
            CHECK(t->or_xor_popcount(a.data(), b.data(), y.data(), words) ==
                  ref.or_xor_popcount(a.data(), b.data(), y.data(), words));
        }
    }
}

TEST_CASE("compound kernels follow their definitions") {
    std::mt19937_64 g{7};
    const auto a = random_words(g, 9);
    const auto b = random_words(g, 9);
    const auto c = random_words(g, 9);
    const auto y = random_words(g, 9);
    std::uint64_t x = 0, and3 = 0, orx = 0;
    for (std::size_t i = 0; i < 9; ++i) {
        x += std::popcount(a[i] ^ b[i]);
        and3 += std::popcount((a[i] & b[i] & c[i]) ^ y[i]);
        orx += std::popcount((a[i] | b[i]) ^ y[i]);
    }
    CHECK(xor_popcount(a, b) == x);
    CHECK(and3_xor_popcount(a, b, c, y) == and3);
    CHECK(or_xor_popcount(a, b, y) == orx);
}

TEST_CASE("span wrappers reject mismatched lengths") {
    const std::vector<Word> a(3), b(4);
    CHECK_THROWS_AS(xor_popcount(a, b), std::invalid_argument);
    CHECK_THROWS_AS(and3_xor_popcount(a, a, b, a), std::invalid_argument);
}

TEST_CASE("backend selection") {
    select(Backend::Scalar);
    CHECK(active().name == scalar_table().name);
    if (avx2_table()) {
        select(Backend::Avx2);
        CHECK(active().name == "avx2");
    } else {
        CHECK_THROWS_AS(select(Backend::Avx2), std::invalid_argument);
    }
    if (!neon_table()) CHECK_THROWS_AS(select(Backend::Neon), std::invalid_argument);
    select(Backend::Auto);
}
