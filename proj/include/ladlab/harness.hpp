#pragma once

// End-to-end ERM experiment over H_n: random target functions, fresh samples
// per (function, sample, N) cell, exhaustive ERM, exact E_in/E_out for every
// minimizer; plus the aggregations (per-N mean tables, gap histograms) and
// the CSV / JSON persistence used by the CLI.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include "json.hpp"

#include "ladlab/boolcore.hpp"
#include "ladlab/hypotheses.hpp"
#include "ladlab/learner.hpp"

namespace ladlab {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr std::int64_t kMicro = 1'000'000;

// Parses a non-negative decimal with at most 6 fractional digits into millionths.
std::int64_t parse_micro(std::string_view text);

enum class TieMode { RecordAll, AveragePerSample };

const char* to_string(TieMode m);
TieMode parse_tie_mode(std::string_view text);

// Debug targets: replace every random function by a fixed monomial's table
// or by its complement.
struct PlantedTarget {
    enum class Kind { Monomial, Complement };
    Kind kind = Kind::Monomial;
    MonomialId id;
};

struct ExperimentConfig {
    int n = 10;
    std::vector<std::uint32_t> sizes{2, 3, 4, 5, 10, 20, 40, 60};
    std::uint32_t functions = 100;
    std::uint32_t samples_per_function = 50;
    std::uint64_t master_seed = 2024;
    TieMode tie_mode = TieMode::RecordAll;
    std::int64_t bin_width_micro = 20'000;
    std::optional<PlantedTarget> planted;
    int dnf_terms = 1;                     // > 1 switches ERM to H_n^(t)
    std::uint64_t dnf_budget = 1'000'000;  // exhaustive cut-off for H_n^(t)
    unsigned workers = 0;                  // 0 = hardware threads; never affects output

    // Throws ConfigError.
    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& cfg);
// Keys missing from `j` keep their value from `base`.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});

struct SignedRatio {
    std::int64_t numerator = 0;
    std::int64_t denominator = 1;
};

struct ExperimentRecord {
    int n = 0;
    std::uint32_t sample_size = 0;
    std::uint32_t function_idx = 0;
    std::uint32_t sample_idx = 0;
    std::int64_t hypothesis_id = 0;  // -1 for an average-per-sample record
    ErrorValue e_in;
    ErrorValue e_out;

    SignedRatio gap() const;
    // Gap rounded half away from zero to millionths, as written to CSV.
    std::int64_t gap_micro() const;
};

// Target function for one function index: random from derive(seed, {f}) or planted.
TruthTable target_function(const ExperimentConfig& cfg, std::uint32_t function_idx);

// One (function, sample, N) cell; records ordered by hypothesis id.
std::vector<ExperimentRecord> run_cell(const ExperimentConfig& cfg, const TruthTable& f, std::uint32_t function_idx,
                                       std::uint32_t sample_idx, std::uint32_t sample_size);

// All cells for one N, ordered by (function_idx, sample_idx, hypothesis_id).
std::vector<ExperimentRecord> run_size(const ExperimentConfig& cfg, std::span<const TruthTable> functions,
                                       std::uint32_t sample_size);

// Whole experiment, ordered by (N, function_idx, sample_idx, hypothesis_id).
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

struct RunSummary {
    std::map<std::uint32_t, std::uint64_t> records_per_size;
    double wall_seconds = 0;
    bool complete = false;
};

std::filesystem::path manifest_path(const std::filesystem::path& csv_path);

// Streams the experiment to `csv_path` one N at a time and writes the run
// manifest next to it. On a write failure the manifest is still written with
// status "partial" listing the sizes already on disk, then the error is rethrown.
RunSummary run_experiment_to_file(const ExperimentConfig& cfg, const std::filesystem::path& csv_path);

// CSV: n,N,function_idx,sample_idx,hypothesis_id,e_in,e_out,gap (LF, 6 decimals).
std::string_view results_header();
std::string to_csv_line(const ExperimentRecord& r);
void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records, bool header = true);

// Exact E_in/E_out are recovered from the 6-decimal fields when the
// denominator (N, 2^n) is small enough for that to be unambiguous; otherwise
// the values are kept as millionths.
std::vector<ExperimentRecord> read_records_csv(std::istream& in);
std::vector<ExperimentRecord> read_records_csv(const std::filesystem::path& path);

struct AggregateRow {
    std::uint32_t sample_size = 0;
    Rational mean_e_in;   // over distinct (function_idx, sample_idx) cells
    Rational mean_e_out;  // under the chosen tie mode
    Rational mean_gap;    // under the chosen tie mode
    std::uint64_t record_count = 0;
    std::uint64_t cell_count = 0;
};

// One row per requested N. Sizes with no records are skipped and named in
// `warnings`. Throws if records of one cell disagree on E_in.
std::vector<AggregateRow> aggregate_table(std::span<const ExperimentRecord> records,
                                          std::span<const std::uint32_t> sizes, TieMode mode,
                                          std::vector<std::string>* warnings = nullptr);

struct HistogramBin {
    std::int64_t lower_edge_micro = 0;
    std::uint64_t count = 0;
};

// Gap histogram at one N over [-1, 1]: half-open bins [edge, edge + width)
// with edges on multiples of the width; a gap of exactly 1 goes to the last
// bin. Throws EmptyInput when no record has that N.
std::vector<HistogramBin> histogram(std::span<const ExperimentRecord> records, std::uint32_t sample_size,
                                    std::int64_t bin_width_micro);

// lower_edge,count
void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins);

// Grand mean of E_out over all records. Throws EmptyInput on no records.
Rational mean_eout_sanity(std::span<const ExperimentRecord> records);

// Fraction of records at size N whose exact gap is >= threshold_micro / 10^6.
double gap_fraction_at_least(std::span<const ExperimentRecord> records, std::uint32_t sample_size,
                             std::int64_t threshold_micro);

}  // namespace ladlab
