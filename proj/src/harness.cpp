#include "ladlab/harness.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <tuple>
#include <unordered_map>

#include "ladlab/errors.hpp"
#include "ladlab/parallel.hpp"

namespace ladlab {
namespace {

// Monomial tables for the whole class are cached up to this many words.
constexpr std::uint64_t kTableCacheWords = std::uint64_t{1} << 22;

std::int64_t round_micro(__int128 num, __int128 den) {
    const bool negative = num < 0;
    const __int128 mag = negative ? -num : num;
    const __int128 scaled = (2 * mag * kMicro + den) / (2 * den);
    return static_cast<std::int64_t>(negative ? -scaled : scaled);
}

BigInt to_big(__int128 v) {
    const bool negative = v < 0;
    auto mag = static_cast<unsigned __int128>(negative ? -v : v);
    BigInt out = static_cast<std::uint64_t>(mag >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(mag);
    return negative ? BigInt{-out} : out;
}

// Exact mean of fractions; numerators are summed per distinct denominator so
// the big-rational arithmetic runs once per denominator, not once per item.
class ExactSum {
public:
    void add(__int128 numerator, __int128 denominator) {
        groups_[denominator] += numerator;
        ++count_;
    }
    void add_rational(const Rational& r) {
        extra_ += r;
        ++count_;
    }
    std::uint64_t count() const noexcept { return count_; }

    Rational mean() const {
        Rational total = extra_;
        for (const auto& [den, num] : groups_) total += Rational{to_big(num), to_big(den)};
        return count_ == 0 ? Rational{0} : Rational{total / count_};
    }

private:
    std::map<__int128, __int128> groups_;
    Rational extra_ = 0;
    std::uint64_t count_ = 0;
};

// Sum over one cell's records. When every record shares a denominator the
// cell mean is the single fraction sum / (count * den).
class CellSum {
public:
    void add(__int128 numerator, __int128 denominator) {
        if (count_ == 0) den_ = denominator;
        if (denominator != den_) uniform_ = false;
        sum_ += numerator;
        exact_.add(numerator, denominator);
        ++count_;
    }
    void add_mean_to(ExactSum& target) const {
        if (uniform_) target.add(sum_, den_ * static_cast<__int128>(count_));
        else target.add_rational(exact_.mean());
    }

private:
    __int128 sum_ = 0;
    __int128 den_ = 1;
    std::uint64_t count_ = 0;
    bool uniform_ = true;
    ExactSum exact_;
};

class MonomialTables {
public:
    MonomialTables(int n, bool cache) : n_{n} {
        if (cache) {
            for (const auto& m : enumerate_monomials(n)) tables_.push_back(monomial_truth_table(m, n));
        }
    }
    TruthTable get(MonomialId id) const {
        if (!tables_.empty()) return tables_[id.value];
        return monomial_truth_table(monomial_from_id(n_, id), n_);
    }

private:
    int n_;
    std::vector<TruthTable> tables_;
};

bool cache_tables(int n) {
    return count_monomials(n) * std::max<std::uint64_t>(1, cube_size(n) / 64) <= kTableCacheWords;
}

std::vector<ExperimentRecord> run_cell_with(const ExperimentConfig& cfg, const MonomialTables& tables,
                                            const TruthTable& f, std::uint32_t function_idx,
                                            std::uint32_t sample_idx, std::uint32_t sample_size) {
    SeededRng rng{SeededRng::derive(cfg.master_seed, {function_idx, sample_idx, sample_size})};
    const LabeledDataset data = sample_dataset(f, sample_size, rng);

    struct Winner {
        std::int64_t id;
        ErrorValue e_out;
    };
    ErrorValue e_in;
    std::vector<Winner> winners;

    if (cfg.dnf_terms <= 1) {
        const ErmResult erm = erm_select(cfg.n, data);
        e_in = erm.e_in_min;
        for (MonomialId id : erm.minimizers) {
            winners.push_back({id.value, out_sample_error(tables.get(id), f)});
        }
    } else {
        const DnfErmResult erm = erm_select_dnf(cfg.n, cfg.dnf_terms, data, cfg.dnf_budget);
        e_in = erm.e_in_min;
        for (const auto& ids : erm.minimizers) {
            std::vector<Word> words(f.words().size(), 0);
            for (MonomialId id : ids) {
                const auto t = tables.get(id);
                for (std::size_t w = 0; w < words.size(); ++w) words[w] |= t.words()[w];
            }
            const auto h = TruthTable::from_words(cfg.n, std::move(words));
            winners.push_back({static_cast<std::int64_t>(dnf_rank(ids)), out_sample_error(h, f)});
        }
        std::sort(winners.begin(), winners.end(), [](const Winner& a, const Winner& b) { return a.id < b.id; });
    }

    std::vector<ExperimentRecord> out;
    const auto make = [&](std::int64_t id, ErrorValue e_out) {
        return ExperimentRecord{cfg.n, sample_size, function_idx, sample_idx, id, e_in, e_out};
    };
    if (cfg.tie_mode == TieMode::RecordAll) {
        for (const auto& w : winners) out.push_back(make(w.id, w.e_out));
    } else {
        std::uint64_t sum = 0;
        for (const auto& w : winners) sum += w.e_out.numerator;
        out.push_back(make(-1, ErrorValue{sum, f.size() * winners.size()}));
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Configuration

const char* to_string(TieMode m) { return m == TieMode::RecordAll ? "record-all" : "average-per-sample"; }

TieMode parse_tie_mode(std::string_view text) {
    if (text == "record-all") return TieMode::RecordAll;
    if (text == "average-per-sample") return TieMode::AveragePerSample;
    throw ConfigError("unknown tie mode '" + std::string{text} + "'");
}

std::int64_t parse_micro(std::string_view text) {
    const auto bad = [&] { return ConfigError("not a decimal with at most 6 fractional digits: '" + std::string{text} + "'"); };
    if (text.empty()) throw bad();
    const auto dot = text.find('.');
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || frac.size() > 6) throw bad();
    const auto digits = [](std::string_view s) { return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }); };
    if (!digits(whole) || !digits(frac) || whole.size() > 12) throw bad();
    std::int64_t value = 0;
    for (char c : whole) value = value * 10 + (c - '0');
    std::int64_t f = 0;
    for (std::size_t i = 0; i < 6; ++i) f = f * 10 + (i < frac.size() ? frac[i] - '0' : 0);
    return value * kMicro + f;
}

void ExperimentConfig::validate() const {
    if (n < kMinDimension || n > kMaxDimension) throw ConfigError("n must lie in [3, 24]");
    if (sizes.empty()) throw ConfigError("at least one sample size is required");
    for (auto s : sizes) {
        if (s < 1 || s > cube_size(n)) throw ConfigError("sample size " + std::to_string(s) + " outside [1, 2^n]");
    }
    if (functions < 1) throw ConfigError("functions must be at least 1");
    if (samples_per_function < 1) throw ConfigError("samples per function must be at least 1");
    if (bin_width_micro <= 0) throw ConfigError("bin width must be positive");
    if (planted && planted->id.value >= count_monomials(n)) throw ConfigError("planted monomial id out of range");
    if (dnf_terms < 1) throw ConfigError("term count must be at least 1");
    if (dnf_budget < 1) throw ConfigError("DNF budget must be at least 1");
}

// ---------------------------------------------------------------------------
// Records

SignedRatio ExperimentRecord::gap() const {
    const __int128 num = static_cast<__int128>(e_out.numerator) * e_in.denominator -
                         static_cast<__int128>(e_in.numerator) * e_out.denominator;
    const __int128 den = static_cast<__int128>(e_out.denominator) * e_in.denominator;
    return SignedRatio{static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)};
}

std::int64_t ExperimentRecord::gap_micro() const {
    const SignedRatio g = gap();
    return round_micro(g.numerator, g.denominator);
}

// ---------------------------------------------------------------------------
// Running

TruthTable target_function(const ExperimentConfig& cfg, std::uint32_t function_idx) {
    if (cfg.planted) {
        const auto table = monomial_truth_table(monomial_from_id(cfg.n, cfg.planted->id), cfg.n);
        return cfg.planted->kind == PlantedTarget::Kind::Monomial ? table : table.complement();
    }
    SeededRng rng{SeededRng::derive(cfg.master_seed, {function_idx})};
    return random_truth_table(cfg.n, rng);
}

std::vector<ExperimentRecord> run_cell(const ExperimentConfig& cfg, const TruthTable& f, std::uint32_t function_idx,
                                       std::uint32_t sample_idx, std::uint32_t sample_size) {
    cfg.validate();
    const MonomialTables tables{cfg.n, false};
    return run_cell_with(cfg, tables, f, function_idx, sample_idx, sample_size);
}

std::vector<ExperimentRecord> run_size(const ExperimentConfig& cfg, std::span<const TruthTable> functions,
                                       std::uint32_t sample_size) {
    cfg.validate();
    if (functions.size() != cfg.functions) throw ConfigError("function table count does not match the config");
    const MonomialTables tables{cfg.n, cache_tables(cfg.n)};
    const std::size_t cells = std::size_t{cfg.functions} * cfg.samples_per_function;
    std::vector<std::vector<ExperimentRecord>> per_cell(cells);
    parallel_for(cells, cfg.workers, [&](std::size_t c) {
        const auto f_idx = static_cast<std::uint32_t>(c / cfg.samples_per_function);
        const auto s_idx = static_cast<std::uint32_t>(c % cfg.samples_per_function);
        per_cell[c] = run_cell_with(cfg, tables, functions[f_idx], f_idx, s_idx, sample_size);
    });
    std::size_t total = 0;
    for (const auto& c : per_cell) total += c.size();
    std::vector<ExperimentRecord> out;
    out.reserve(total);
    for (auto& c : per_cell) out.insert(out.end(), c.begin(), c.end());
    return out;
}

namespace {

std::vector<std::uint32_t> sorted_sizes(const ExperimentConfig& cfg) {
    std::vector<std::uint32_t> sizes = cfg.sizes;
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
}

std::vector<TruthTable> all_functions(const ExperimentConfig& cfg) {
    std::vector<TruthTable> out;
    out.reserve(cfg.functions);
    for (std::uint32_t f = 0; f < cfg.functions; ++f) out.push_back(target_function(cfg, f));
    return out;
}

}  // namespace

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto functions = all_functions(cfg);
    std::vector<ExperimentRecord> out;
    for (auto size : sorted_sizes(cfg)) {
        auto part = run_size(cfg, functions, size);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

// Declared in harness_io.cpp.
void write_manifest(const std::filesystem::path& csv_path, const ExperimentConfig& cfg, const RunSummary& summary,
                    std::string_view status);

RunSummary run_experiment_to_file(const ExperimentConfig& cfg, const std::filesystem::path& csv_path) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    RunSummary summary;
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    std::ofstream out{csv_path, std::ios::binary | std::ios::trunc};
    try {
        if (!out) throw std::runtime_error("cannot open " + csv_path.string() + " for writing");
        out << results_header() << '\n';
        const auto functions = all_functions(cfg);
        for (auto size : sorted_sizes(cfg)) {
            const auto records = run_size(cfg, functions, size);
            write_records_csv(out, records, false);
            out.flush();
            if (!out) throw std::runtime_error("write to " + csv_path.string() + " failed at N=" + std::to_string(size));
            summary.records_per_size[size] = records.size();
        }
        out.close();
        if (!out) throw std::runtime_error("closing " + csv_path.string() + " failed");
    } catch (...) {
        summary.wall_seconds = elapsed();
        write_manifest(csv_path, cfg, summary, "partial");
        throw;
    }
    summary.complete = true;
    summary.wall_seconds = elapsed();
    write_manifest(csv_path, cfg, summary, "complete");
    return summary;
}

// ---------------------------------------------------------------------------
// Aggregation

std::vector<AggregateRow> aggregate_table(std::span<const ExperimentRecord> records,
                                          std::span<const std::uint32_t> sizes, TieMode mode,
                                          std::vector<std::string>* warnings) {
    struct SizeAcc {
        ExactSum e_in;
        ExactSum e_out_records;
        ExactSum gap_records;
        ExactSum e_out_cells;  // one per-cell mean per cell
        ExactSum gap_cells;
        std::uint64_t records = 0;
    };

    std::map<std::uint32_t, SizeAcc> acc;
    std::size_t i = 0;
    while (i < records.size()) {
        const auto& first = records[i];
        auto& a = acc[first.sample_size];
        CellSum e_out;
        CellSum gap;
        std::size_t j = i;
        for (; j < records.size() && records[j].sample_size == first.sample_size &&
               records[j].function_idx == first.function_idx && records[j].sample_idx == first.sample_idx;
             ++j) {
            const auto& r = records[j];
            if (!(r.e_in == first.e_in)) throw std::invalid_argument("records of one sample disagree on E_in");
            const SignedRatio g = r.gap();
            a.e_out_records.add(r.e_out.numerator, r.e_out.denominator);
            a.gap_records.add(g.numerator, g.denominator);
            e_out.add(r.e_out.numerator, r.e_out.denominator);
            gap.add(g.numerator, g.denominator);
        }
        a.records += j - i;
        a.e_in.add(first.e_in.numerator, first.e_in.denominator);
        e_out.add_mean_to(a.e_out_cells);
        gap.add_mean_to(a.gap_cells);
        i = j;
    }

    std::vector<AggregateRow> rows;
    for (auto size : sizes) {
        const auto it = acc.find(size);
        if (it == acc.end()) {
            if (warnings) warnings->push_back("no records for N=" + std::to_string(size) + "; row omitted");
            continue;
        }
        const auto& a = it->second;
        AggregateRow row;
        row.sample_size = size;
        row.mean_e_in = a.e_in.mean();
        row.record_count = a.records;
        row.cell_count = a.e_in.count();
        const bool all = mode == TieMode::RecordAll;
        row.mean_e_out = all ? a.e_out_records.mean() : a.e_out_cells.mean();
        row.mean_gap = all ? a.gap_records.mean() : a.gap_cells.mean();
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<HistogramBin> histogram(std::span<const ExperimentRecord> records, std::uint32_t sample_size,
                                    std::int64_t bin_width_micro) {
    if (bin_width_micro <= 0) throw RangeError("bin width must be positive");
    const auto floor_div = [](std::int64_t a, std::int64_t b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); };
    const std::int64_t first = floor_div(-kMicro, bin_width_micro);
    const std::int64_t last = -floor_div(-kMicro, bin_width_micro) - 1;  // ceil(1e6 / w) - 1
    std::vector<HistogramBin> bins;
    for (std::int64_t k = first; k <= last; ++k) bins.push_back(HistogramBin{k * bin_width_micro, 0});

    std::uint64_t seen = 0;
    for (const auto& r : records) {
        if (r.sample_size != sample_size) continue;
        ++seen;
        const std::int64_t g = std::clamp(r.gap_micro(), -kMicro, kMicro);
        const std::int64_t k = std::min(floor_div(g, bin_width_micro), last);
        ++bins[static_cast<std::size_t>(k - first)].count;
    }
    if (seen == 0) throw EmptyInput("no records with N=" + std::to_string(sample_size));
    return bins;
}

Rational mean_eout_sanity(std::span<const ExperimentRecord> records) {
    if (records.empty()) throw EmptyInput("no records");
    ExactSum sum;
    for (const auto& r : records) sum.add(r.e_out.numerator, r.e_out.denominator);
    return sum.mean();
}

double gap_fraction_at_least(std::span<const ExperimentRecord> records, std::uint32_t sample_size,
                             std::int64_t threshold_micro) {
    std::uint64_t total = 0;
    std::uint64_t hits = 0;
    for (const auto& r : records) {
        if (r.sample_size != sample_size) continue;
        ++total;
        const SignedRatio g = r.gap();
        if (static_cast<__int128>(g.numerator) * kMicro >= static_cast<__int128>(threshold_micro) * g.denominator) ++hits;
    }
    if (total == 0) throw EmptyInput("no records with N=" + std::to_string(sample_size));
    return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace ladlab
