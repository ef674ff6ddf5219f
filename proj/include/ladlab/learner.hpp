#pragma once

// In-sample / out-of-sample errors and exhaustive ERM over H_n.
//
// Errors are exact rationals. Doubles appear only at export, so minimizer
// ties are detected by integer comparison.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ladlab/boolcore.hpp"
#include "ladlab/hypotheses.hpp"

namespace ladlab {

// Exact decimal rendering of num/den with `digits` fractional digits, rounding
// half away from zero. den must be positive.
std::string format_decimal(std::int64_t num, std::int64_t den, int digits = 6);
std::string format_decimal(const BigInt& num, const BigInt& den, int digits = 6);

// numerator/denominator in [0, 1]; the fraction is kept unreduced so the
// numerator stays a disagreement count.
struct ErrorValue {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 1;

    double value() const noexcept { return static_cast<double>(numerator) / static_cast<double>(denominator); }
    std::string to_string(int digits = 6) const;

    friend std::strong_ordering operator<=>(const ErrorValue& a, const ErrorValue& b) noexcept {
        const auto lhs = static_cast<unsigned __int128>(a.numerator) * b.denominator;
        const auto rhs = static_cast<unsigned __int128>(b.numerator) * a.denominator;
        return lhs <=> rhs;
    }
    friend bool operator==(const ErrorValue& a, const ErrorValue& b) noexcept { return (a <=> b) == 0; }
};

ErrorValue in_sample_error(const TruthTable& h, const LabeledDataset& d);
ErrorValue in_sample_error(const CubicMonomial& h, const LabeledDataset& d);

// Hamming distance over the whole cube divided by 2^n (uniform input distribution).
ErrorValue out_sample_error(const TruthTable& h, const TruthTable& f);

// Per-literal bit masks over the N points of a dataset: bit s of
// literal(v, positive) is set iff sample point s satisfies that literal.
class SampleMasks {
public:
    explicit SampleMasks(const LabeledDataset& d);

    int n() const noexcept { return n_; }
    std::size_t sample_count() const noexcept { return samples_; }
    std::size_t words() const noexcept { return words_; }

    std::span<const Word> literal(int var, bool positive) const noexcept {
        const std::size_t slot = static_cast<std::size_t>(var - 1) * 2 + (positive ? 1 : 0);
        return {literals_.data() + slot * words_, words_};
    }
    std::span<const Word> labels() const noexcept { return labels_; }

    // Restriction of a monomial to the sample points, as an N-bit vector.
    std::vector<Word> monomial_vector(const CubicMonomial& m) const;
    std::uint64_t disagreements(const CubicMonomial& m) const;

private:
    int n_;
    std::size_t samples_;
    std::size_t words_;
    std::vector<Word> literals_;
    std::vector<Word> labels_;
};

struct ErmResult {
    ErrorValue e_in_min;
    std::vector<MonomialId> minimizers;  // ascending; every id attaining e_in_min
};

// Scans all of H_n once. With workers > 1 the id range is split into
// contiguous chunks whose results merge to exactly the sequential answer.
ErmResult erm_select(int n, const LabeledDataset& d, unsigned workers = 1);

enum class ErmStrategy { Exhaustive, Greedy };

const char* to_string(ErmStrategy s);

struct DnfErmResult {
    ErrorValue e_in_min;
    std::vector<std::vector<MonomialId>> minimizers;  // each strictly increasing; sorted by colex rank
    ErmStrategy strategy = ErmStrategy::Exhaustive;
    std::uint64_t formulas_evaluated = 0;
};

// ERM over t-term cubic DNFs. Exhaustive when count_dnfs(n, t) <= budget;
// otherwise greedy forward selection: t rounds, each adding the unused term
// that minimises E_in (ties to the smallest id). The strategy used is
// reported in the result.
DnfErmResult erm_select_dnf(int n, int t, const LabeledDataset& d, std::uint64_t budget);

}  // namespace ladlab
