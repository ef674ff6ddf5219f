#pragma once

// Boolean cube fundamentals.
//
// Bit convention used everywhere (ids, files, CLI): a point of B^n is an
// integer index in [0, 2^n) and variable x_i (1-based) is bit i-1 of that
// index, so x_1 is the least significant bit.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ladlab/kernels.hpp"
#include "ladlab/rng.hpp"

namespace ladlab {

using kernels::Word;

inline constexpr int kMinDimension = 3;
inline constexpr int kMaxDimension = 24;

// Throws DimensionError unless kMinDimension <= n <= kMaxDimension.
void check_dimension(int n);

inline constexpr std::uint64_t cube_size(int n) noexcept { return std::uint64_t{1} << n; }

struct Point {
    std::uint32_t index = 0;

    // Value of x_var, var is 1-based.
    constexpr bool bit(int var) const noexcept { return ((index >> (var - 1)) & 1U) != 0; }

    friend constexpr auto operator<=>(Point, Point) = default;
};

// A total Boolean function on B^n stored as a 2^n-bit vector; bit p is f(p).
// For n < 6 the table occupies the low 2^n bits of a single word and the
// remaining bits stay zero.
class TruthTable {
public:
    static TruthTable zeros(int n);
    static TruthTable ones(int n);
    // Takes ownership of `words`; bits past 2^n are cleared.
    static TruthTable from_words(int n, std::vector<Word> words);

    int n() const noexcept { return n_; }
    std::uint64_t size() const noexcept { return cube_size(n_); }
    std::span<const Word> words() const noexcept { return words_; }

    bool operator[](Point p) const { return ((words_[p.index >> 6] >> (p.index & 63)) & 1U) != 0; }
    bool at(Point p) const;
    void set(Point p, bool value);

    std::uint64_t popcount() const { return kernels::popcount(words_); }
    TruthTable complement() const;

    // "n=<n>:<hex>"; each 64-bit word as 16 lowercase hex digits, least
    // significant word first. For n < 6 only the 2^n/4 low digits are written.
    std::string to_hex() const;
    static TruthTable from_hex(std::string_view text);

    friend bool operator==(const TruthTable&, const TruthTable&) = default;

private:
    TruthTable(int n, std::vector<Word> words) : n_{n}, words_{std::move(words)} {}

    int n_ = 0;
    std::vector<Word> words_;
};

// x_i^a_i x_j^a_j x_k^a_k with 1 <= i < j < k.
class CubicMonomial {
public:
    // Polarities indexed like `vars`; true means the positive literal.
    CubicMonomial(std::array<int, 3> vars, std::array<bool, 3> polarities);

    // polarity_bits packs (a_i, a_j, a_k) as a 3-bit number with a_i high.
    static CubicMonomial from_bits(int i, int j, int k, unsigned polarity_bits);

    const std::array<int, 3>& vars() const noexcept { return vars_; }
    bool polarity(int q) const noexcept { return ((polarity_bits_ >> (2 - q)) & 1U) != 0; }
    unsigned polarity_bits() const noexcept { return polarity_bits_; }
    int max_var() const noexcept { return vars_[2]; }

    // e.g. "x1 ~x2 x3"
    std::string to_string() const;

    friend bool operator==(const CubicMonomial&, const CubicMonomial&) = default;
    friend auto operator<=>(const CubicMonomial&, const CubicMonomial&) = default;

private:
    std::array<int, 3> vars_;
    unsigned polarity_bits_ = 0;
};

bool eval_monomial(const CubicMonomial& m, Point p, int n);
TruthTable monomial_truth_table(const CubicMonomial& m, int n);

class DnfFormula {
public:
    // Requires at least one term and pairwise distinct terms.
    explicit DnfFormula(std::vector<CubicMonomial> terms);

    std::span<const CubicMonomial> terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    std::string to_string() const;

    friend bool operator==(const DnfFormula&, const DnfFormula&) = default;

private:
    std::vector<CubicMonomial> terms_;
};

bool eval_dnf(const DnfFormula& d, Point p, int n);
TruthTable dnf_truth_table(const DnfFormula& d, int n);

// Fills whole 64-bit words from `rng` in order, then masks to 2^n bits.
TruthTable random_truth_table(int n, SeededRng& rng);

// N labelled, pairwise distinct points of B^n.
class LabeledDataset {
public:
    LabeledDataset(int n, std::vector<Point> points, std::vector<std::uint8_t> labels);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::span<const Point> points() const noexcept { return points_; }
    std::span<const std::uint8_t> labels() const noexcept { return labels_; }

private:
    int n_;
    std::vector<Point> points_;
    std::vector<std::uint8_t> labels_;
};

// Labels `points` with f.
LabeledDataset label_points(const TruthTable& f, std::vector<Point> points);

// N distinct points drawn uniformly without replacement (Floyd's algorithm,
// points kept in draw order) and labelled by f.
LabeledDataset sample_dataset(const TruthTable& f, std::size_t count, SeededRng& rng);

// Partially defined Boolean function (T, F) with T and F disjoint.
class PdBf {
public:
    PdBf(int n, std::vector<Point> true_points, std::vector<Point> false_points);

    int n() const noexcept { return n_; }
    std::span<const Point> true_points() const noexcept { return true_; }
    std::span<const Point> false_points() const noexcept { return false_; }

private:
    int n_;
    std::vector<Point> true_;
    std::vector<Point> false_;
};

PdBf pdbf_from_dataset(const LabeledDataset& d);

bool is_extension(const TruthTable& f, const PdBf& pd);

}  // namespace ladlab
