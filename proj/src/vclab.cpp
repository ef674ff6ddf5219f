#include "ladlab/vclab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "ladlab/errors.hpp"
#include "ladlab/parallel.hpp"

namespace ladlab {
namespace {

// A monomial as a point predicate: h(p) = ((p & mask) == want).
struct MonomialMask {
    std::uint32_t mask;
    std::uint32_t want;

    bool operator()(std::uint32_t p) const noexcept { return (p & mask) == want; }
};

MonomialMask to_mask(const CubicMonomial& m) {
    MonomialMask out{0, 0};
    for (int q = 0; q < 3; ++q) {
        const std::uint32_t bit = std::uint32_t{1} << (m.vars()[q] - 1);
        out.mask |= bit;
        if (m.polarity(q)) out.want |= bit;
    }
    return out;
}

std::vector<MonomialMask> class_masks(int n) {
    std::vector<MonomialMask> out;
    for (const auto& m : enumerate_monomials(n)) out.push_back(to_mask(m));
    return out;
}

// Tracks which of the 2^k patterns have been seen.
class PatternSet {
public:
    explicit PatternSet(std::size_t bits) : full_{std::size_t{1} << bits}, seen_((full_ + 63) / 64, 0) {}

    void clear() {
        std::fill(seen_.begin(), seen_.end(), 0);
        distinct_ = 0;
    }
    // Returns true once every pattern has been seen.
    bool add(std::uint64_t pattern) {
        Word& w = seen_[pattern >> 6];
        const Word bit = Word{1} << (pattern & 63);
        if ((w & bit) == 0) {
            w |= bit;
            ++distinct_;
        }
        return distinct_ == full_;
    }
    std::size_t distinct() const noexcept { return distinct_; }
    bool complete() const noexcept { return distinct_ == full_; }

private:
    std::size_t full_;
    std::vector<Word> seen_;
    std::size_t distinct_ = 0;
};

void check_shatter_size(std::size_t size) {
    if (size == 0) throw EmptyInput("sample set is empty");
    if (size > kMaxShatterSize) {
        throw RangeError("shattering checks are limited to " + std::to_string(kMaxShatterSize) + " points");
    }
}

// True iff 2^size exceeds `classes`, i.e. shattering is impossible by counting.
bool exceeds_class(std::size_t size, std::uint64_t classes) {
    return size >= 64 || (std::uint64_t{1} << size) > classes;
}

double big_log(const BigInt& x) {
    const auto bits = boost::multiprecision::msb(x);
    if (bits < 900) return std::log(x.convert_to<double>());
    const auto shift = bits - 60;
    // Division rather than >>: GCC 11 flags Boost's shift with a bogus memcpy warning.
    const BigInt top = x / boost::multiprecision::pow(BigInt{2}, static_cast<unsigned>(shift));
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::numbers::ln2;
}

}  // namespace

// ---------------------------------------------------------------------------
// Sample sets and dichotomies

SampleSet::SampleSet(int n, std::vector<Point> points) : n_{n}, points_{std::move(points)} {
    check_dimension(n);
    std::sort(points_.begin(), points_.end());
    if (std::adjacent_find(points_.begin(), points_.end()) != points_.end()) {
        throw std::invalid_argument("sample set points must be distinct");
    }
    if (!points_.empty() && points_.back().index >= cube_size(n)) throw DimensionError("sample point outside B^n");
}

std::vector<Dichotomy> dichotomies(const SampleSet& s) {
    if (s.size() == 0) throw EmptyInput("sample set is empty");
    if (s.size() > 64) throw RangeError("dichotomies are limited to 64 points");
    std::vector<Dichotomy> out;
    for (const auto& h : class_masks(s.n())) {
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (h(s.points()[i].index)) bits |= std::uint64_t{1} << i;
        }
        out.push_back(Dichotomy{bits});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool shatters(const SampleSet& s) {
    check_shatter_size(s.size());
    if (exceeds_class(s.size(), count_monomials(s.n()))) return false;
    PatternSet seen{s.size()};
    for (const auto& h : class_masks(s.n())) {
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (h(s.points()[i].index)) bits |= std::uint64_t{1} << i;
        }
        if (seen.add(bits)) return true;
    }
    return false;
}

namespace {

class DnfPatternScan {
public:
    DnfPatternScan(std::vector<std::uint32_t> patterns, int t, std::size_t sample_size)
        : patterns_{std::move(patterns)}, t_{t}, seen_{sample_size} {}

    bool run() { return descend(0, 0, 0); }

private:
    bool descend(int depth, std::size_t from, std::uint32_t acc) {
        const auto remaining = static_cast<std::size_t>(t_ - depth);
        for (std::size_t i = from; i + remaining <= patterns_.size(); ++i) {
            const std::uint32_t next = acc | patterns_[i];
            if (remaining == 1) {
                if (seen_.add(next)) return true;
            } else if (descend(depth + 1, i + 1, next)) {
                return true;
            }
        }
        return false;
    }

    std::vector<std::uint32_t> patterns_;
    int t_;
    PatternSet seen_;
};

}  // namespace

bool shatters_dnf(const SampleSet& s, int t, std::span<const CubicMonomial> pool, std::uint64_t budget) {
    check_shatter_size(s.size());
    if (t < 1) throw RangeError("term count must be positive");
    {
        std::vector<CubicMonomial> sorted(pool.begin(), pool.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("term pool must not contain duplicates");
        }
    }
    if (static_cast<std::size_t>(t) > pool.size()) return false;
    if (binomial(pool.size(), static_cast<std::uint64_t>(t)) > budget) {
        throw RangeError("DNF shattering check exceeds its budget of " + std::to_string(budget) + " formulas");
    }
    std::vector<std::uint32_t> patterns;
    patterns.reserve(pool.size());
    for (const auto& term : pool) {
        if (term.max_var() > s.n()) throw DimensionError("pool term uses a variable beyond n");
        const MonomialMask h = to_mask(term);
        std::uint32_t bits = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (h(s.points()[i].index)) bits |= std::uint32_t{1} << i;
        }
        patterns.push_back(bits);
    }
    return DnfPatternScan{std::move(patterns), t, s.size()}.run();
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

int block_width(int block_size) { return 2 + (1 << (block_size - 1)); }

// Points of the monomial construction placed on variables offset+1 .. offset+width.
std::vector<Point> block_points(int block_size, int offset) {
    std::vector<Point> out;
    const int columns = 1 << (block_size - 1);
    for (int i = 0; i < block_size; ++i) {
        std::uint32_t p = 0b11U << offset;
        for (int m = 0; m < columns; ++m) {
            if (((m >> i) & 1) != 0) p |= std::uint32_t{1} << (offset + 2 + m);
        }
        out.push_back(Point{p});
    }
    return out;
}

// Term on the block at `offset` realizing `pattern` over that block's points
// (bit i = sample i of the block).
CubicMonomial block_term(int block_size, int offset, std::uint32_t pattern) {
    const std::uint32_t all = (std::uint32_t{1} << block_size) - 1;
    const std::uint32_t half = std::uint32_t{1} << (block_size - 1);
    const bool positive = pattern < half;
    const std::uint32_t column = positive ? pattern : (~pattern & all);
    const int var = offset + 3 + static_cast<int>(column);
    return CubicMonomial{{offset + 1, offset + 2, var}, {true, true, positive}};
}

void check_block_size(int block_size) {
    if (block_size < 2) throw RangeError("block sample size must be at least 2");
    if (block_size > 5) throw DimensionError("block sample size above 5 needs more than 24 variables");
}

}  // namespace

SampleSet construct_shattered_set(int sample_size) {
    check_block_size(sample_size);
    SampleSet s{block_width(sample_size), block_points(sample_size, 0)};
    if (!shatters(s)) throw VerificationFailure("monomial construction is not shattered");
    return s;
}

int dnf_construction_dimension(int block_size, int t) {
    if (t < 1) throw RangeError("term count must be positive");
    check_block_size(block_size);
    return t * block_width(block_size);
}

SampleSet construct_shattered_set_dnf(int block_size, int t) {
    const int n = dnf_construction_dimension(block_size, t);
    check_dimension(n);
    const int width = block_width(block_size);

    std::vector<Point> points;  // block-major, construction order
    for (int j = 0; j < t; ++j) {
        const auto block = block_points(block_size, j * width);
        points.insert(points.end(), block.begin(), block.end());
    }

    const std::size_t total = points.size();
    check_shatter_size(total);
    const std::uint32_t block_all = (std::uint32_t{1} << block_size) - 1;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << total); ++y) {
        std::vector<CubicMonomial> terms;
        for (int j = 0; j < t; ++j) {
            const auto sub = static_cast<std::uint32_t>(y >> (j * block_size)) & block_all;
            terms.push_back(block_term(block_size, j * width, sub));
        }
        const DnfFormula formula{std::move(terms)};
        for (std::size_t i = 0; i < total; ++i) {
            if (eval_dnf(formula, points[i], n) != (((y >> i) & 1U) != 0)) {
                throw VerificationFailure("DNF construction misses dichotomy " + std::to_string(y));
            }
        }
    }
    return SampleSet{n, std::move(points)};
}

std::vector<CubicMonomial> block_local_terms(int block_size, int t) {
    const int width = block_width(block_size);
    dnf_construction_dimension(block_size, t);
    std::vector<CubicMonomial> out;
    for (int j = 0; j < t; ++j) {
        for (const auto& m : enumerate_monomials(width)) {
            const auto& v = m.vars();
            const int o = j * width;
            out.push_back(CubicMonomial::from_bits(v[0] + o, v[1] + o, v[2] + o, m.polarity_bits()));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bounds

int conjectured_vc(int n) {
    if (n < 3) throw RangeError("conjectured VC dimension needs n >= 3");
    return static_cast<int>(std::bit_width(static_cast<unsigned>(n - 2)));
}

std::uint64_t count_upper_bound(int n, std::uint64_t t) {
    return boost::multiprecision::msb(count_dnfs(n, t));
}

BigInt sauer_bound(std::uint64_t sample_size, std::uint64_t dvc) {
    BigInt sum = 0;
    BigInt term = 1;  // C(N, 0)
    for (std::uint64_t i = 0; i <= std::min(dvc, sample_size); ++i) {
        sum += term;
        term = term * (sample_size - i) / (i + 1);
    }
    return sum;
}

double generalization_bound(double e_in, std::uint64_t sample_size, std::uint64_t dvc, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw RangeError("delta must lie in (0, 1)");
    if (sample_size == 0) throw RangeError("sample size must be positive");
    const double log_term = std::log(4.0) + big_log(sauer_bound(2 * sample_size, dvc)) - std::log(delta);
    return e_in + std::sqrt(8.0 / static_cast<double>(sample_size) * log_term);
}

double generalization_bound(const ErrorValue& e_in, std::uint64_t sample_size, std::uint64_t dvc, double delta) {
    return generalization_bound(e_in.value(), sample_size, dvc, delta);
}

// ---------------------------------------------------------------------------
// Exact VC dimension

const char* to_string(VcMode m) { return m == VcMode::Exact ? "exact" : "witnessed"; }

VcReport vc_exact(int n, int cap, std::uint64_t work_budget, unsigned workers) {
    check_dimension(n);
    if (cap < 1 || cap > 6) throw RangeError("vc_exact cap must lie in [1, 6]");

    VcReport report;
    report.n = n;
    report.conjecture = conjectured_vc(n);

    const auto masks = class_masks(n);
    const std::uint64_t hyps = masks.size();
    const auto points = static_cast<std::uint32_t>(cube_size(n));

    // Level sets stored flat: `level` holds survivors of size k, stride k.
    std::vector<std::uint32_t> level;
    std::size_t k = 0;
    bool refused = false;

    const auto refuse = [&](std::size_t next) {
        refused = true;
        report.note = "work budget exceeded before level " + std::to_string(next);
    };

    // Level 1: p is shattered iff some h is 1 at p and some h is 0 at p.
    if (points * hyps > work_budget) {
        refuse(1);
    } else {
        report.work += points * hyps;
        for (std::uint32_t p = 0; p < points; ++p) {
            bool one = false;
            bool zero = false;
            for (const auto& h : masks) (h(p) ? one : zero) = true;
            if (one && zero) level.push_back(p);
        }
        k = 1;
        report.shattered_per_level.push_back(level.size());
    }

    while (!refused && !level.empty() && static_cast<int>(k) < cap) {
        const std::size_t count = level.size() / k;
        std::uint64_t cost = 0;
        for (std::size_t s = 0; s < count; ++s) {
            const std::uint32_t top = level[s * k + k - 1];
            cost += (points - 1 - top + k) * hyps;
        }
        if (report.work + cost > work_budget) {
            refuse(k + 1);
            break;
        }
        report.work += cost;

        std::vector<std::vector<std::uint32_t>> extensions(count);
        parallel_for(count, workers, [&](std::size_t s) {
            const std::uint32_t* set = level.data() + s * k;
            std::vector<std::uint32_t> base(masks.size(), 0);
            for (std::size_t h = 0; h < masks.size(); ++h) {
                for (std::size_t i = 0; i < k; ++i) {
                    if (masks[h](set[i])) base[h] |= std::uint32_t{1} << i;
                }
            }
            PatternSet seen{k + 1};
            for (std::uint32_t q = set[k - 1] + 1; q < points; ++q) {
                seen.clear();
                for (std::size_t h = 0; h < masks.size(); ++h) {
                    const std::uint32_t pattern = base[h] | (masks[h](q) ? std::uint32_t{1} << k : 0U);
                    if (seen.add(pattern)) break;
                }
                if (seen.complete()) extensions[s].push_back(q);
            }
        });

        std::vector<std::uint32_t> next;
        for (std::size_t s = 0; s < count; ++s) {
            for (std::uint32_t q : extensions[s]) {
                next.insert(next.end(), level.begin() + static_cast<std::ptrdiff_t>(s * k),
                            level.begin() + static_cast<std::ptrdiff_t>(s * k + k));
                next.push_back(q);
            }
        }
        if (next.empty()) {
            report.next_level_refuted = true;
            break;
        }
        level = std::move(next);
        ++k;
        report.shattered_per_level.push_back(level.size() / k);
    }

    report.value = level.empty() ? 0 : static_cast<int>(k);
    if (!level.empty()) {
        std::vector<Point> witness;
        for (std::size_t i = 0; i < k; ++i) witness.push_back(Point{level[i]});
        report.witness = SampleSet{n, std::move(witness)};
        if (!shatters(report.witness)) throw VerificationFailure("vc_exact produced an unshattered witness");
    } else {
        report.witness = SampleSet{n, {}};
    }

    if (report.next_level_refuted || (k >= 1 && level.empty())) {
        report.mode = VcMode::Exact;
    } else {
        report.mode = VcMode::Witnessed;
        if (!refused) report.note = "level cap " + std::to_string(cap) + " reached with shattered sets remaining";
    }
    report.agrees_with_conjecture = report.mode == VcMode::Exact && report.value == report.conjecture;
    return report;
}

// ---------------------------------------------------------------------------
// Witness search

WitnessSearchResult vc_witness_search(int n, int target, std::uint64_t budget, SeededRng& rng) {
    check_dimension(n);
    if (target < 1) throw RangeError("witness target must be at least 1");
    WitnessSearchResult result;
    const auto size = static_cast<std::size_t>(target);
    const std::uint64_t hyps = count_monomials(n);
    if (exceeds_class(size, hyps)) {
        result.note = "impossible: 2^" + std::to_string(target) + " dichotomies exceed the " + std::to_string(hyps) +
                      " hypotheses of H_" + std::to_string(n);
        return result;
    }
    if (size > cube_size(n)) {
        result.note = "impossible: target exceeds the number of points in B^n";
        return result;
    }

    const auto masks = class_masks(n);
    const auto universe = cube_size(n);
    const std::size_t stall_limit = 200;
    std::vector<std::uint32_t> patterns(masks.size());
    std::vector<std::uint32_t> set(size);
    PatternSet seen{size};

    const auto score = [&] {
        seen.clear();
        for (auto p : patterns) {
            if (seen.add(p)) break;
        }
        ++result.evaluations;
        return seen.distinct();
    };
    const auto contains = [&](std::uint32_t q) { return std::find(set.begin(), set.end(), q) != set.end(); };
    const auto random_outside = [&] {
        std::uint32_t q;
        do q = static_cast<std::uint32_t>(rng.below(universe));
        while (contains(q));
        return q;
    };
    const auto set_slot = [&](std::size_t slot, std::uint32_t q) {
        set[slot] = q;
        const std::uint32_t bit = std::uint32_t{1} << slot;
        for (std::size_t h = 0; h < masks.size(); ++h) {
            patterns[h] = masks[h](q) ? (patterns[h] | bit) : (patterns[h] & ~bit);
        }
    };
    const auto finish = [&] {
        std::vector<Point> pts;
        for (auto q : set) pts.push_back(Point{q});
        SampleSet s{n, std::move(pts)};
        if (!shatters(s)) throw VerificationFailure("witness search accepted an unshattered set");
        result.found = true;
        result.witness.assign(s.points().begin(), s.points().end());
        result.note = "verified shattered set";
        return result;
    };

    while (result.evaluations < budget) {
        std::fill(set.begin(), set.end(), static_cast<std::uint32_t>(universe));
        for (std::size_t slot = 0; slot < size; ++slot) set_slot(slot, random_outside());
        std::size_t current = score();
        if (seen.complete()) return finish();

        std::size_t stall = 0;
        while (stall < stall_limit && result.evaluations < budget) {
            const auto slot = static_cast<std::size_t>(rng.below(size));
            const std::uint32_t old = set[slot];
            set_slot(slot, random_outside());
            const std::size_t candidate = score();
            if (seen.complete()) return finish();
            if (candidate >= current) {
                stall = candidate > current ? 0 : stall + 1;
                current = candidate;
            } else {
                set_slot(slot, old);
                ++stall;
            }
        }
    }
    result.note = "no shattered set found within budget; this does not prove none exists";
    return result;
}

}  // namespace ladlab
