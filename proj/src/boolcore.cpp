#include "ladlab/boolcore.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

#include "ladlab/errors.hpp"

namespace ladlab {
namespace {

constexpr std::size_t word_count(int n) { return n < 6 ? 1 : std::size_t{1} << (n - 6); }

constexpr Word tail_mask(int n) { return n < 6 ? (Word{1} << (1U << n)) - 1 : ~Word{0}; }

// Word of bit positions b in [0, 64) with bit v of b set, for v < 6.
constexpr std::array<Word, 6> kLowVarPattern{
    0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
    0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
};

void check_point(Point p, int n) {
    if (p.index >= cube_size(n)) {
        throw DimensionError("point " + std::to_string(p.index) + " lies outside B^" + std::to_string(n));
    }
}

void check_monomial_fits(const CubicMonomial& m, int n) {
    if (m.max_var() > n) {
        throw DimensionError("monomial uses x" + std::to_string(m.max_var()) + " but the cube has n=" +
                             std::to_string(n));
    }
}

}  // namespace

void check_dimension(int n) {
    if (n < kMinDimension || n > kMaxDimension) {
        throw DimensionError("dimension n=" + std::to_string(n) + " outside supported range [3, 24]");
    }
}

// ---------------------------------------------------------------------------
// TruthTable

TruthTable TruthTable::zeros(int n) {
    check_dimension(n);
    return TruthTable{n, std::vector<Word>(word_count(n), 0)};
}

TruthTable TruthTable::ones(int n) {
    check_dimension(n);
    std::vector<Word> words(word_count(n), ~Word{0});
    words.back() &= tail_mask(n);
    return TruthTable{n, std::move(words)};
}

TruthTable TruthTable::from_words(int n, std::vector<Word> words) {
    check_dimension(n);
    if (words.size() != word_count(n)) throw DimensionError("truth table word count does not match n");
    words.back() &= tail_mask(n);
    return TruthTable{n, std::move(words)};
}

bool TruthTable::at(Point p) const {
    check_point(p, n_);
    return (*this)[p];
}

void TruthTable::set(Point p, bool value) {
    check_point(p, n_);
    const Word bit = Word{1} << (p.index & 63);
    if (value) words_[p.index >> 6] |= bit;
    else words_[p.index >> 6] &= ~bit;
}

TruthTable TruthTable::complement() const {
    std::vector<Word> words(words_.size());
    std::transform(words_.begin(), words_.end(), words.begin(), [](Word w) { return ~w; });
    return from_words(n_, std::move(words));
}

std::string TruthTable::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const int digits_per_word = n_ < 6 ? (1 << n_) / 4 : 16;
    std::string out = "n=" + std::to_string(n_) + ":";
    out.reserve(out.size() + words_.size() * static_cast<std::size_t>(digits_per_word));
    for (Word w : words_) {
        for (int d = digits_per_word - 1; d >= 0; --d) out.push_back(kDigits[(w >> (4 * d)) & 0xf]);
    }
    return out;
}

TruthTable TruthTable::from_hex(std::string_view text) {
    if (!text.starts_with("n=")) throw std::invalid_argument("truth table hex must start with 'n='");
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("truth table hex is missing ':'");
    int n = 0;
    const auto [ptr, ec] = std::from_chars(text.data() + 2, text.data() + colon, n);
    if (ec != std::errc{} || ptr != text.data() + colon) throw std::invalid_argument("bad dimension in truth table hex");
    check_dimension(n);

    const std::string_view hex = text.substr(colon + 1);
    const std::size_t digits_per_word = n < 6 ? (std::size_t{1} << n) / 4 : 16;
    const std::size_t words = word_count(n);
    if (hex.size() != digits_per_word * words) throw std::invalid_argument("truth table hex has the wrong length");

    std::vector<Word> out(words, 0);
    for (std::size_t w = 0; w < words; ++w) {
        const std::string_view chunk = hex.substr(w * digits_per_word, digits_per_word);
        Word value = 0;
        const auto [p, e] = std::from_chars(chunk.data(), chunk.data() + chunk.size(), value, 16);
        if (e != std::errc{} || p != chunk.data() + chunk.size()) throw std::invalid_argument("bad hex digit in truth table");
        if (std::any_of(chunk.begin(), chunk.end(), [](char c) { return c >= 'A' && c <= 'F'; })) {
            throw std::invalid_argument("truth table hex must be lowercase");
        }
        out[w] = value;
    }
    const Word before = out.back();
    auto table = from_words(n, std::move(out));
    if (table.words_.back() != before) throw std::invalid_argument("truth table hex sets bits beyond 2^n");
    return table;
}

// ---------------------------------------------------------------------------
// Monomials and DNFs

CubicMonomial::CubicMonomial(std::array<int, 3> vars, std::array<bool, 3> polarities) : vars_{vars} {
    if (vars[0] < 1 || !(vars[0] < vars[1] && vars[1] < vars[2])) {
        throw RangeError("cubic monomial needs variable indices 1 <= i < j < k");
    }
    polarity_bits_ = (unsigned{polarities[0]} << 2) | (unsigned{polarities[1]} << 1) | unsigned{polarities[2]};
}

CubicMonomial CubicMonomial::from_bits(int i, int j, int k, unsigned polarity_bits) {
    if (polarity_bits > 7) throw RangeError("polarity bits must fit in three bits");
    return CubicMonomial{{i, j, k}, {(polarity_bits & 4U) != 0, (polarity_bits & 2U) != 0, (polarity_bits & 1U) != 0}};
}

std::string CubicMonomial::to_string() const {
    std::string out;
    for (int q = 0; q < 3; ++q) {
        if (q > 0) out.push_back(' ');
        if (!polarity(q)) out.push_back('~');
        out += "x" + std::to_string(vars_[q]);
    }
    return out;
}

bool eval_monomial(const CubicMonomial& m, Point p, int n) {
    check_monomial_fits(m, n);
    check_point(p, n);
    for (int q = 0; q < 3; ++q) {
        if (p.bit(m.vars()[q]) != m.polarity(q)) return false;
    }
    return true;
}

TruthTable monomial_truth_table(const CubicMonomial& m, int n) {
    check_dimension(n);
    check_monomial_fits(m, n);

    // Literals on x1..x6 select bit positions inside a word; literals on
    // x7..xn select whole words.
    Word low = ~Word{0};
    std::uint64_t high_mask = 0;
    std::uint64_t high_value = 0;
    for (int q = 0; q < 3; ++q) {
        const int v = m.vars()[q] - 1;
        const bool positive = m.polarity(q);
        if (v < 6) {
            low &= positive ? kLowVarPattern[static_cast<std::size_t>(v)] : ~kLowVarPattern[static_cast<std::size_t>(v)];
        } else {
            high_mask |= std::uint64_t{1} << (v - 6);
            if (positive) high_value |= std::uint64_t{1} << (v - 6);
        }
    }
    std::vector<Word> words(word_count(n), 0);
    for (std::size_t w = 0; w < words.size(); ++w) {
        if ((w & high_mask) == high_value) words[w] = low;
    }
    return TruthTable::from_words(n, std::move(words));
}

DnfFormula::DnfFormula(std::vector<CubicMonomial> terms) : terms_{std::move(terms)} {
    if (terms_.empty()) throw EmptyInput("a DNF needs at least one term");
    for (std::size_t a = 0; a < terms_.size(); ++a) {
        for (std::size_t b = a + 1; b < terms_.size(); ++b) {
            if (terms_[a] == terms_[b]) throw std::invalid_argument("DNF terms must be pairwise distinct");
        }
    }
}

std::string DnfFormula::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i > 0) out += " | ";
        out += terms_[i].to_string();
    }
    return out;
}

bool eval_dnf(const DnfFormula& d, Point p, int n) {
    bool any = false;
    for (const auto& term : d.terms()) any = eval_monomial(term, p, n) || any;
    return any;
}

TruthTable dnf_truth_table(const DnfFormula& d, int n) {
    std::vector<Word> words(word_count(n), 0);
    for (const auto& term : d.terms()) {
        const auto t = monomial_truth_table(term, n);
        for (std::size_t w = 0; w < words.size(); ++w) words[w] |= t.words()[w];
    }
    return TruthTable::from_words(n, std::move(words));
}

// ---------------------------------------------------------------------------
// Random generation and sampling

TruthTable random_truth_table(int n, SeededRng& rng) {
    check_dimension(n);
    std::vector<Word> words(word_count(n));
    for (auto& w : words) w = rng.next_u64();
    return TruthTable::from_words(n, std::move(words));
}

LabeledDataset::LabeledDataset(int n, std::vector<Point> points, std::vector<std::uint8_t> labels)
    : n_{n}, points_{std::move(points)}, labels_{std::move(labels)} {
    check_dimension(n);
    if (points_.empty()) throw EmptyInput("dataset must contain at least one point");
    if (points_.size() != labels_.size()) throw std::invalid_argument("dataset points and labels differ in length");
    if (points_.size() > cube_size(n)) throw InfeasibleSample("dataset larger than the cube");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        check_point(points_[i], n);
        if (labels_[i] > 1) throw std::invalid_argument("dataset labels must be 0 or 1");
    }
    std::vector<Point> sorted = points_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw std::invalid_argument("dataset points must be pairwise distinct");
    }
}

LabeledDataset label_points(const TruthTable& f, std::vector<Point> points) {
    std::vector<std::uint8_t> labels;
    labels.reserve(points.size());
    for (Point p : points) labels.push_back(f.at(p) ? 1 : 0);
    return LabeledDataset{f.n(), std::move(points), std::move(labels)};
}

LabeledDataset sample_dataset(const TruthTable& f, std::size_t count, SeededRng& rng) {
    const std::uint64_t universe = f.size();
    if (count == 0) throw EmptyInput("sample size must be at least 1");
    if (count > universe) {
        throw InfeasibleSample("cannot draw " + std::to_string(count) + " distinct points from B^" +
                               std::to_string(f.n()));
    }

    std::vector<Point> points;
    points.reserve(count);
    // Floyd: for j in [U-N, U), draw t in [0, j]; take t unless already taken, else j.
    if (count * 64 < universe) {
        std::unordered_set<std::uint32_t> taken;
        taken.reserve(count * 2);
        for (std::uint64_t j = universe - count; j < universe; ++j) {
            auto t = static_cast<std::uint32_t>(rng.below(j + 1));
            if (!taken.insert(t).second) {
                t = static_cast<std::uint32_t>(j);
                taken.insert(t);
            }
            points.push_back(Point{t});
        }
    } else {
        std::vector<bool> taken(universe, false);
        for (std::uint64_t j = universe - count; j < universe; ++j) {
            auto t = static_cast<std::uint32_t>(rng.below(j + 1));
            if (taken[t]) t = static_cast<std::uint32_t>(j);
            taken[t] = true;
            points.push_back(Point{t});
        }
    }
    return label_points(f, std::move(points));
}

// ---------------------------------------------------------------------------
// pdBfs

PdBf::PdBf(int n, std::vector<Point> true_points, std::vector<Point> false_points)
    : n_{n}, true_{std::move(true_points)}, false_{std::move(false_points)} {
    check_dimension(n);
    for (Point p : true_) check_point(p, n);
    for (Point p : false_) check_point(p, n);
    std::vector<Point> t = true_;
    std::vector<Point> f = false_;
    std::sort(t.begin(), t.end());
    std::sort(f.begin(), f.end());
    std::vector<Point> common;
    std::set_intersection(t.begin(), t.end(), f.begin(), f.end(), std::back_inserter(common));
    if (!common.empty()) throw std::invalid_argument("pdBf true and false sets must be disjoint");
}

PdBf pdbf_from_dataset(const LabeledDataset& d) {
    std::vector<Point> t;
    std::vector<Point> f;
    for (std::size_t i = 0; i < d.size(); ++i) {
        (d.labels()[i] != 0 ? t : f).push_back(d.points()[i]);
    }
    return PdBf{d.n(), std::move(t), std::move(f)};
}

bool is_extension(const TruthTable& f, const PdBf& pd) {
    if (f.n() != pd.n()) throw DimensionError("pdBf and truth table live on different cubes");
    const auto all_of = [&](std::span<const Point> pts, bool value) {
        return std::all_of(pts.begin(), pts.end(), [&](Point p) { return f[p] == value; });
    };
    return all_of(pd.true_points(), true) && all_of(pd.false_points(), false);
}

}  // namespace ladlab
