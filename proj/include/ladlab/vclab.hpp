#pragma once

// Shattering analysis of H_n and block-local H_n^(t): dichotomy sets,
// shattered-set constructions, exact and witnessed VC dimension, and the
// counting and generalization bounds that go with them.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ladlab/boolcore.hpp"
#include "ladlab/hypotheses.hpp"
#include "ladlab/learner.hpp"

namespace ladlab {

// Largest sample for which shattering is checked (2^N patterns tracked).
inline constexpr std::size_t kMaxShatterSize = 20;

// Distinct points of B^n kept in strictly increasing order.
class SampleSet {
public:
    // Sorts `points`; throws on duplicates or points outside B^n.
    SampleSet(int n, std::vector<Point> points);

    int n() const noexcept { return n_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::span<const Point> points() const noexcept { return points_; }

    friend bool operator==(const SampleSet&, const SampleSet&) = default;

private:
    int n_;
    std::vector<Point> points_;
};

// Bit i is the hypothesis value at the i-th point of the (sorted) sample set.
struct Dichotomy {
    std::uint64_t bits = 0;
    friend constexpr auto operator<=>(Dichotomy, Dichotomy) = default;
};

// Restrictions of every h in H_n to S, deduplicated and ascending. |S| <= 64.
std::vector<Dichotomy> dichotomies(const SampleSet& s);

// True iff H_n realizes all 2^|S| dichotomies on S. |S| <= kMaxShatterSize.
bool shatters(const SampleSet& s);

// True iff t-term DNFs built from distinct terms of `pool` realize all 2^|S|
// dichotomies on S. Scans t-subsets of the pool; throws RangeError when
// C(|pool|, t) exceeds `budget`.
bool shatters_dnf(const SampleSet& s, int t, std::span<const CubicMonomial> pool,
                  std::uint64_t budget = 100'000'000);

// N points shattered by H_n for n = 2 + 2^(N-1). Every point has x1 = x2 = 1;
// for m in [0, 2^(N-1)) column x_{3+m} of sample i is bit i of m, so
// x1 x2 x_{3+m} and x1 x2 ~x_{3+m} realize the pattern m and its complement.
// The result is checked with shatters() before returning. 2 <= N <= 5.
SampleSet construct_shattered_set(int sample_size);

// Dimension used by construct_shattered_set_dnf.
int dnf_construction_dimension(int block_size, int t);

// t disjoint copies of the monomial construction, one variable block each.
// Block j's two gate variables are 1 exactly on block j's points, so a term
// confined to block j is zero elsewhere and one term per block realizes any
// joint dichotomy. Every joint dichotomy is checked against an explicit
// t-term DNF before returning.
SampleSet construct_shattered_set_dnf(int block_size, int t);

// Monomials whose three variables lie inside one block of the DNF construction.
std::vector<CubicMonomial> block_local_terms(int block_size, int t);

int conjectured_vc(int n);

// floor(log2 B(n;t,3)): 2^d <= |class| bounds the VC dimension.
std::uint64_t count_upper_bound(int n, std::uint64_t t);

// sum_{i=0}^{dvc} C(N, i)
BigInt sauer_bound(std::uint64_t sample_size, std::uint64_t dvc);

// e_in + sqrt((8/N) ln(4 m(2N) / delta)) with m(2N) = sauer_bound(2N, dvc).
double generalization_bound(double e_in, std::uint64_t sample_size, std::uint64_t dvc, double delta);
double generalization_bound(const ErrorValue& e_in, std::uint64_t sample_size, std::uint64_t dvc, double delta);

enum class VcMode { Exact, Witnessed };

const char* to_string(VcMode m);

struct VcReport {
    int n = 0;
    VcMode mode = VcMode::Witnessed;
    int value = 0;
    SampleSet witness{3, {}};          // shattered set of size `value` (empty when value = 0)
    bool next_level_refuted = false;   // no (value+1)-set is shattered
    int conjecture = 0;
    bool agrees_with_conjecture = false;
    std::vector<std::uint64_t> shattered_per_level;  // index k-1 -> number of shattered k-sets
    std::uint64_t work = 0;                          // monomial evaluations spent
    std::string note;
};

// Levelwise search: every shattered 1-set, then each shattered k-set extended
// by points above its maximum. Exact because every subset of a shattered set
// is shattered. Stops after level `cap`; refuses a level whose estimated cost
// would push total work past `work_budget` and returns the witnessed partial
// result instead.
VcReport vc_exact(int n, int cap = 6, std::uint64_t work_budget = 20'000'000'000ULL, unsigned workers = 0);

struct WitnessSearchResult {
    bool found = false;
    std::vector<Point> witness;  // sorted; verified with shatters() when found
    std::uint64_t evaluations = 0;
    std::string note;
};

// Randomized-restart hill climbing over `target`-point sets, maximising the
// number of dichotomies. `budget` bounds the number of candidate sets scored.
// Not finding a witness is not a proof that none exists, except when
// 2^target > |H_n| (reported in the note).
WitnessSearchResult vc_witness_search(int n, int target, std::uint64_t budget, SeededRng& rng);

}  // namespace ladlab
