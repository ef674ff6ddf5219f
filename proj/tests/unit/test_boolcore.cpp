#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "ladlab/boolcore.hpp"
#include "ladlab/errors.hpp"
#include "ladlab/rng.hpp"

using namespace ladlab;

TEST_CASE("dimension range") {
    CHECK_NOTHROW(check_dimension(3));
    CHECK_NOTHROW(check_dimension(24));
    CHECK_THROWS_AS(check_dimension(2), DimensionError);
    CHECK_THROWS_AS(check_dimension(25), DimensionError);
}

TEST_CASE("x1 is the least significant bit") {
    const Point p{0b101};
    CHECK(p.bit(1));
    CHECK_FALSE(p.bit(2));
    CHECK(p.bit(3));
}

TEST_CASE("monomial truth tables, small and multi-word") {
    const auto m = CubicMonomial::from_bits(1, 2, 3, 0b111);
    CHECK(monomial_truth_table(m, 3).words()[0] == 0x80);  // only point 7
    CHECK(monomial_truth_table(CubicMonomial::from_bits(1, 2, 3, 0b011), 3).words()[0] == 0x40);  // ~x1 x2 x3 -> point 6
    CHECK(monomial_truth_table(m, 6).words()[0] == 0x8080808080808080ULL);

    // x5 x6 x7 on B^7: points 112..127, the top 16 bits of word 1.
    const auto high = monomial_truth_table(CubicMonomial::from_bits(5, 6, 7, 0b111), 7);
    REQUIRE(high.words().size() == 2);
    CHECK(high.words()[0] == 0);
    CHECK(high.words()[1] == 0xffff000000000000ULL);
    CHECK(high.popcount() == 16);
}

TEST_CASE("monomial tables agree with pointwise evaluation") {
    for (int n : {3, 5, 6, 8}) {
        for (unsigned pol = 0; pol < 8; ++pol) {
            const auto m = CubicMonomial::from_bits(1, n / 2 + 1, n, pol);
            const auto t = monomial_truth_table(m, n);
            CHECK(t.popcount() == cube_size(n) / 8);
            for (std::uint32_t p = 0; p < cube_size(n); ++p) REQUIRE(t[Point{p}] == eval_monomial(m, Point{p}, n));
        }
    }
}

TEST_CASE("monomial construction rules") {
    CHECK_THROWS_AS(CubicMonomial::from_bits(2, 2, 3, 0), RangeError);
    CHECK_THROWS_AS(CubicMonomial::from_bits(3, 2, 1, 0), RangeError);
    CHECK_THROWS_AS(CubicMonomial::from_bits(1, 2, 3, 8), RangeError);
    CHECK_THROWS_AS(monomial_truth_table(CubicMonomial::from_bits(1, 2, 4, 0), 3), DimensionError);
    CHECK(CubicMonomial::from_bits(1, 2, 3, 0b101).to_string() == "x1 ~x2 x3");
}

TEST_CASE("hex round trip and format") {
    CHECK(monomial_truth_table(CubicMonomial::from_bits(1, 2, 3, 7), 3).to_hex() == "n=3:80");
    CHECK(monomial_truth_table(CubicMonomial::from_bits(5, 6, 7, 7), 7).to_hex() ==
          "n=7:0000000000000000ffff000000000000");
    SeededRng rng{11};
    for (int n : {3, 4, 5, 6, 9}) {
        const auto t = random_truth_table(n, rng);
        CHECK(TruthTable::from_hex(t.to_hex()) == t);
    }
    CHECK_THROWS(TruthTable::from_hex("n=3:8A"));
    CHECK_THROWS(TruthTable::from_hex("n=3:800"));
    CHECK_THROWS(TruthTable::from_hex("3:80"));
}

TEST_CASE("small tables keep their unused bits clear") {
    const auto t = TruthTable::ones(4);
    CHECK(t.words()[0] == 0xffff);
    CHECK(t.complement().popcount() == 0);
    CHECK(TruthTable::from_words(3, {~Word{0}}).words()[0] == 0xff);
    SeededRng rng{1};
    CHECK((random_truth_table(5, rng).words()[0] >> 32) == 0);
}

TEST_CASE("DNF evaluation is the OR of its terms") {
    const auto a = CubicMonomial::from_bits(1, 2, 3, 7);
    const auto b = CubicMonomial::from_bits(4, 5, 6, 7);
    const DnfFormula d{{a, b}};
    const auto t = dnf_truth_table(d, 6);
    // |A| + |B| - |A and B| = 8 + 8 - 1
    CHECK(t.popcount() == 15);
    for (std::uint32_t p = 0; p < 64; ++p) REQUIRE(t[Point{p}] == eval_dnf(d, Point{p}, 6));
    CHECK(d.to_string() == "x1 x2 x3 | x4 x5 x6");
    CHECK_THROWS_AS(DnfFormula{{}}, EmptyInput);
    CHECK_THROWS(DnfFormula{{a, a}});
}

TEST_CASE("dataset validation") {
    CHECK_THROWS_AS(LabeledDataset(3, {}, {}), EmptyInput);
    CHECK_THROWS(LabeledDataset(3, {Point{1}, Point{1}}, {0, 1}));
    CHECK_THROWS_AS(LabeledDataset(3, {Point{8}}, {0}), DimensionError);
    CHECK_THROWS(LabeledDataset(3, {Point{1}}, {2}));
}

TEST_CASE("sampling without replacement") {
    SeededRng rng{99};
    const auto f = random_truth_table(10, rng);
    for (std::size_t count : {1u, 2u, 60u, 1024u}) {
        SeededRng draw{count};
        const auto d = sample_dataset(f, count, draw);
        REQUIRE(d.size() == count);
        std::set<std::uint32_t> distinct;
        for (std::size_t i = 0; i < d.size(); ++i) {
            distinct.insert(d.points()[i].index);
            CHECK(d.labels()[i] == (f[d.points()[i]] ? 1 : 0));
        }
        CHECK(distinct.size() == count);
    }
    SeededRng a{5}, b{5};
    const auto d1 = sample_dataset(f, 40, a);
    const auto d2 = sample_dataset(f, 40, b);
    CHECK(std::equal(d1.points().begin(), d1.points().end(), d2.points().begin()));
    SeededRng c{1};
    CHECK_THROWS_AS(sample_dataset(f, 1025, c), InfeasibleSample);
    CHECK_THROWS_AS(sample_dataset(f, 0, c), EmptyInput);
}

TEST_CASE("sampling is roughly uniform") {
    const auto f = TruthTable::zeros(3);
    std::vector<int> hits(8, 0);
    SeededRng rng{17};
    for (int i = 0; i < 8000; ++i) ++hits[sample_dataset(f, 1, rng).points()[0].index];
    for (int h : hits) CHECK(std::abs(h - 1000) < 150);
}

TEST_CASE("pdBf and extensions") {
    const auto f = monomial_truth_table(CubicMonomial::from_bits(1, 2, 3, 7), 4);
    const auto d = label_points(f, {Point{7}, Point{0}, Point{15}, Point{3}});
    const auto pd = pdbf_from_dataset(d);
    CHECK(pd.true_points().size() == 2);
    CHECK(pd.false_points().size() == 2);
    CHECK(is_extension(f, pd));
    CHECK_FALSE(is_extension(f.complement(), pd));
    CHECK_THROWS(PdBf(4, {Point{1}}, {Point{1}}));
}
