#include "ladlab/learner.hpp"

#include <algorithm>
#include <limits>

#include "ladlab/errors.hpp"
#include "ladlab/parallel.hpp"

namespace ladlab {
namespace {

std::string render_scaled(bool negative, const std::string& scaled_digits, int digits) {
    std::string s = scaled_digits;
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
    std::string out = negative ? "-" : "";
    out += s.substr(0, s.size() - static_cast<std::size_t>(digits));
    if (digits > 0) {
        out.push_back('.');
        out += s.substr(s.size() - static_cast<std::size_t>(digits));
    }
    return out;
}

void check_same_cube(int a, int b) {
    if (a != b) throw DimensionError("operands live on different cubes");
}

}  // namespace

std::string format_decimal(std::int64_t num, std::int64_t den, int digits) {
    if (den <= 0) throw std::invalid_argument("format_decimal: denominator must be positive");
    __int128 scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const bool negative = num < 0;
    const __int128 mag = negative ? -static_cast<__int128>(num) : static_cast<__int128>(num);
    const __int128 scaled = (2 * mag * scale + den) / (2 * static_cast<__int128>(den));
    if (scaled > std::numeric_limits<std::int64_t>::max()) return format_decimal(BigInt{num}, BigInt{den}, digits);
    const bool show_sign = negative && scaled != 0;
    return render_scaled(show_sign, std::to_string(static_cast<std::int64_t>(scaled)), digits);
}

std::string format_decimal(const BigInt& num, const BigInt& den, int digits) {
    if (den <= 0) throw std::invalid_argument("format_decimal: denominator must be positive");
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const bool negative = num < 0;
    const BigInt mag = negative ? BigInt{-num} : num;
    const BigInt scaled = (2 * mag * scale + den) / (2 * den);
    return render_scaled(negative && scaled != 0, scaled.str(), digits);
}

std::string ErrorValue::to_string(int digits) const {
    return format_decimal(BigInt{numerator}, BigInt{denominator}, digits);
}

ErrorValue in_sample_error(const TruthTable& h, const LabeledDataset& d) {
    check_same_cube(h.n(), d.n());
    std::uint64_t wrong = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (h[d.points()[i]] != (d.labels()[i] != 0)) ++wrong;
    }
    return ErrorValue{wrong, d.size()};
}

ErrorValue in_sample_error(const CubicMonomial& h, const LabeledDataset& d) {
    std::uint64_t wrong = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (eval_monomial(h, d.points()[i], d.n()) != (d.labels()[i] != 0)) ++wrong;
    }
    return ErrorValue{wrong, d.size()};
}

ErrorValue out_sample_error(const TruthTable& h, const TruthTable& f) {
    check_same_cube(h.n(), f.n());
    return ErrorValue{kernels::xor_popcount(h.words(), f.words()), f.size()};
}

// ---------------------------------------------------------------------------
// SampleMasks

SampleMasks::SampleMasks(const LabeledDataset& d)
    : n_{d.n()}, samples_{d.size()}, words_{(d.size() + 63) / 64} {
    literals_.assign(static_cast<std::size_t>(n_) * 2 * words_, 0);
    labels_.assign(words_, 0);
    std::vector<Word> valid(words_, ~Word{0});
    if (samples_ % 64 != 0) valid.back() = (Word{1} << (samples_ % 64)) - 1;

    for (std::size_t s = 0; s < samples_; ++s) {
        const Word bit = Word{1} << (s % 64);
        const std::size_t w = s / 64;
        const Point p = d.points()[s];
        for (int v = 1; v <= n_; ++v) {
            if (p.bit(v)) literals_[(static_cast<std::size_t>(v - 1) * 2 + 1) * words_ + w] |= bit;
        }
        if (d.labels()[s] != 0) labels_[w] |= bit;
    }
    for (int v = 1; v <= n_; ++v) {
        const std::size_t neg = static_cast<std::size_t>(v - 1) * 2 * words_;
        const std::size_t pos = neg + words_;
        for (std::size_t w = 0; w < words_; ++w) literals_[neg + w] = ~literals_[pos + w] & valid[w];
    }
}

std::vector<Word> SampleMasks::monomial_vector(const CubicMonomial& m) const {
    if (m.max_var() > n_) throw DimensionError("monomial variable exceeds n");
    std::vector<Word> out(words_);
    const auto a = literal(m.vars()[0], m.polarity(0));
    const auto b = literal(m.vars()[1], m.polarity(1));
    const auto c = literal(m.vars()[2], m.polarity(2));
    for (std::size_t w = 0; w < words_; ++w) out[w] = a[w] & b[w] & c[w];
    return out;
}

std::uint64_t SampleMasks::disagreements(const CubicMonomial& m) const {
    if (m.max_var() > n_) throw DimensionError("monomial variable exceeds n");
    return kernels::and3_xor_popcount(literal(m.vars()[0], m.polarity(0)), literal(m.vars()[1], m.polarity(1)),
                                      literal(m.vars()[2], m.polarity(2)), labels_);
}

// ---------------------------------------------------------------------------
// ERM over H_n

namespace {

struct ChunkResult {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<MonomialId> ids;
};

ChunkResult scan_range(const SampleMasks& masks, std::uint32_t first, std::uint32_t last) {
    const auto& k = kernels::active();
    const int n = masks.n();
    const std::size_t words = masks.words();
    const Word* y = masks.labels().data();
    ChunkResult out;
    // Walk triples in canonical order, entering the range at `first`.
    std::uint32_t id = first - first % 8;
    CubicMonomial start = monomial_from_id(n, MonomialId{id});
    int i = start.vars()[0];
    int j = start.vars()[1];
    int kk = start.vars()[2];
    while (id < last) {
        for (unsigned pol = 0; pol < 8 && id < last; ++pol, ++id) {
            if (id < first) continue;
            const Word* a = masks.literal(i, (pol & 4U) != 0).data();
            const Word* b = masks.literal(j, (pol & 2U) != 0).data();
            const Word* c = masks.literal(kk, (pol & 1U) != 0).data();
            const std::uint64_t wrong = k.and3_xor_popcount(a, b, c, y, words);
            if (wrong < out.best) {
                out.best = wrong;
                out.ids.clear();
            }
            if (wrong == out.best) out.ids.push_back(MonomialId{id});
        }
        if (++kk > n) {
            if (++j >= n) {
                ++i;
                j = i + 1;
            }
            kk = j + 1;
        }
    }
    return out;
}

}  // namespace

ErmResult erm_select(int n, const LabeledDataset& d, unsigned workers) {
    check_same_cube(n, d.n());
    const auto total = static_cast<std::uint32_t>(count_monomials(n));
    const SampleMasks masks{d};

    workers = std::min(resolve_workers(workers), total);
    std::vector<ChunkResult> chunks(workers);
    parallel_for(workers, workers, [&](std::size_t w) {
        const auto first = static_cast<std::uint32_t>(std::uint64_t{total} * w / workers);
        const auto last = static_cast<std::uint32_t>(std::uint64_t{total} * (w + 1) / workers);
        if (first < last) chunks[w] = scan_range(masks, first, last);
    });

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& c : chunks) best = std::min(best, c.best);
    ErmResult result{ErrorValue{best, d.size()}, {}};
    for (const auto& c : chunks) {
        if (c.best == best) result.minimizers.insert(result.minimizers.end(), c.ids.begin(), c.ids.end());
    }
    return result;
}

// ---------------------------------------------------------------------------
// ERM over t-term DNFs

const char* to_string(ErmStrategy s) { return s == ErmStrategy::Exhaustive ? "exhaustive" : "greedy"; }

namespace {

bool colex_less(const std::vector<MonomialId>& a, const std::vector<MonomialId>& b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

class DnfScanner {
public:
    DnfScanner(const std::vector<std::vector<Word>>& vectors, std::span<const Word> labels, int t)
        : vectors_{vectors}, labels_{labels}, t_{t},
          partial_(static_cast<std::size_t>(t + 1), std::vector<Word>(labels.size(), 0)),
          chosen_(static_cast<std::size_t>(t)) {}

    void run() { descend(0, 0); }

    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::vector<MonomialId>> minimizers;
    std::uint64_t evaluated = 0;

private:
    void descend(int depth, std::size_t from) {
        const std::size_t remaining = static_cast<std::size_t>(t_ - depth);
        const auto& k = kernels::active();
        const std::size_t words = labels_.size();
        for (std::size_t id = from; id + remaining <= vectors_.size(); ++id) {
            chosen_[static_cast<std::size_t>(depth)] = MonomialId{static_cast<std::uint32_t>(id)};
            const auto& acc = partial_[static_cast<std::size_t>(depth)];
            if (remaining == 1) {
                const std::uint64_t wrong = k.or_xor_popcount(acc.data(), vectors_[id].data(), labels_.data(), words);
                ++evaluated;
                if (wrong < best) {
                    best = wrong;
                    minimizers.clear();
                }
                if (wrong == best) minimizers.push_back(chosen_);
            } else {
                auto& next = partial_[static_cast<std::size_t>(depth + 1)];
                for (std::size_t w = 0; w < words; ++w) next[w] = acc[w] | vectors_[id][w];
                descend(depth + 1, id + 1);
            }
        }
    }

    const std::vector<std::vector<Word>>& vectors_;
    std::span<const Word> labels_;
    int t_;
    std::vector<std::vector<Word>> partial_;
    std::vector<MonomialId> chosen_;
};

}  // namespace

DnfErmResult erm_select_dnf(int n, int t, const LabeledDataset& d, std::uint64_t budget) {
    check_same_cube(n, d.n());
    if (t < 1) throw RangeError("term count must be positive");
    const BigInt total = count_dnfs(n, static_cast<std::uint64_t>(t));

    const SampleMasks masks{d};
    const auto monomials = enumerate_monomials(n);
    std::vector<std::vector<Word>> vectors;
    vectors.reserve(monomials.size());
    for (const auto& m : monomials) vectors.push_back(masks.monomial_vector(m));

    DnfErmResult result;
    if (total <= budget) {
        DnfScanner scan{vectors, masks.labels(), t};
        scan.run();
        std::sort(scan.minimizers.begin(), scan.minimizers.end(), colex_less);
        result.e_in_min = ErrorValue{scan.best, d.size()};
        result.minimizers = std::move(scan.minimizers);
        result.strategy = ErmStrategy::Exhaustive;
        result.formulas_evaluated = scan.evaluated;
        return result;
    }

    const auto& k = kernels::active();
    std::vector<Word> current(masks.words(), 0);
    std::vector<bool> used(vectors.size(), false);
    std::vector<MonomialId> chosen;
    std::uint64_t wrong = 0;
    for (int round = 0; round < t; ++round) {
        std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
        std::size_t best_id = 0;
        for (std::size_t id = 0; id < vectors.size(); ++id) {
            if (used[id]) continue;
            const std::uint64_t e = k.or_xor_popcount(current.data(), vectors[id].data(), masks.labels().data(), masks.words());
            ++result.formulas_evaluated;
            if (e < best) {
                best = e;
                best_id = id;
            }
        }
        used[best_id] = true;
        chosen.push_back(MonomialId{static_cast<std::uint32_t>(best_id)});
        for (std::size_t w = 0; w < current.size(); ++w) current[w] |= vectors[best_id][w];
        wrong = best;
    }
    std::sort(chosen.begin(), chosen.end());
    result.e_in_min = ErrorValue{wrong, d.size()};
    result.minimizers.push_back(std::move(chosen));
    result.strategy = ErmStrategy::Greedy;
    return result;
}

}  // namespace ladlab
