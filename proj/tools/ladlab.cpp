// ladlab: command-line front end for the library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ladlab/boolcore.hpp"
#include "ladlab/errors.hpp"
#include "ladlab/harness.hpp"
#include "ladlab/hypotheses.hpp"
#include "ladlab/learner.hpp"
#include "ladlab/rng.hpp"
#include "ladlab/vclab.hpp"

namespace {

using namespace ladlab;
using nlohmann::json;

std::string rational_decimal(const Rational& r) {
    return format_decimal(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

std::vector<Point> to_points(std::span<const Point> pts) { return {pts.begin(), pts.end()}; }

json points_json(std::span<const Point> pts) {
    json arr = json::array();
    for (auto p : pts) arr.push_back(p.index);
    return arr;
}

// ---------------------------------------------------------------------------

struct EnumArgs {
    int n = 0;
    int t = 1;
    std::optional<std::uint64_t> limit;
    std::string format = "csv";
};

int run_enum(const EnumArgs& a) {
    check_dimension(a.n);
    const bool csv = a.format == "csv";
    if (a.t == 1) {
        const auto all = enumerate_monomials(a.n);
        const std::size_t count = a.limit ? std::min<std::uint64_t>(*a.limit, all.size()) : all.size();
        if (csv) std::cout << "id,i,j,k,ai,aj,ak\n";
        for (std::size_t id = 0; id < count; ++id) {
            const auto& m = all[id];
            if (csv) {
                std::cout << id << ',' << m.vars()[0] << ',' << m.vars()[1] << ',' << m.vars()[2] << ','
                          << m.polarity(0) << ',' << m.polarity(1) << ',' << m.polarity(2) << '\n';
            } else {
                std::cout << id << ": " << m.to_string() << '\n';
            }
        }
        return 0;
    }
    if (a.t < 1) throw RangeError("t must be at least 1");
    const BigInt total = count_dnfs(a.n, static_cast<std::uint64_t>(a.t));
    const std::uint64_t cap = 10'000'000;
    std::uint64_t want = a.limit.value_or(cap);
    if (!a.limit && total > cap) {
        throw RangeError("class has " + total.str() + " formulas; pass --limit to list a prefix");
    }
    if (BigInt{want} > total) want = static_cast<std::uint64_t>(total);
    const auto e = enumerate_dnfs(a.n, a.t, want);
    if (csv) std::cout << "rank,term_ids\n";
    for (std::size_t q = 0; q < e.ids.size(); ++q) {
        const std::uint64_t rank = dnf_rank(e.ids[q]);
        if (csv) {
            std::cout << rank << ',';
            for (std::size_t k = 0; k < e.ids[q].size(); ++k) std::cout << (k ? ";" : "") << e.ids[q][k].value;
            std::cout << '\n';
        } else {
            std::cout << rank << ": " << e.formulas[q].to_string() << '\n';
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------

LabeledDataset read_dataset(int n, const std::string& path) {
    std::ifstream in{path};
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::vector<Point> points;
    std::vector<std::uint8_t> labels;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "point,label") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("line " + std::to_string(line_no) + ": expected point,label");
        try {
            std::size_t used = 0;
            const auto p = std::stoull(line.substr(0, comma), &used);
            if (used != comma) throw std::invalid_argument("trailing characters");
            const auto label_text = line.substr(comma + 1);
            if (label_text != "0" && label_text != "1") throw std::invalid_argument("label must be 0 or 1");
            if (p >= cube_size(n)) throw RangeError("point " + std::to_string(p) + " outside B^" + std::to_string(n));
            points.push_back(Point{static_cast<std::uint32_t>(p)});
            labels.push_back(label_text == "1" ? 1 : 0);
        } catch (const RangeError&) {
            throw;
        } catch (const std::exception& e) {
            throw std::runtime_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (points.empty()) throw EmptyInput("dataset has no rows");
    return LabeledDataset{n, std::move(points), std::move(labels)};
}

int run_erm(int n, const std::string& dataset) {
    check_dimension(n);
    const auto d = read_dataset(n, dataset);
    const auto r = erm_select(n, d);
    std::cout << r.e_in_min.to_string() << ',' << r.minimizers.size() << '\n';
    for (auto id : r.minimizers) std::cout << id.value << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

int run_vc_exact(int n, int cap) {
    check_dimension(n);
    const auto r = vc_exact(n, cap);
    json j;
    j["n"] = r.n;
    j["mode"] = to_string(r.mode);
    j["vc"] = r.value;
    j["witness"] = points_json(r.witness.points());
    j["next_level_refuted"] = r.next_level_refuted;
    j["conjecture"] = r.conjecture;
    j["agrees_with_conjecture"] = r.agrees_with_conjecture;
    j["shattered_per_level"] = r.shattered_per_level;
    j["work"] = r.work;
    if (!r.note.empty()) j["note"] = r.note;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_vc_witness(int n, int target, std::uint64_t budget, std::uint64_t seed) {
    check_dimension(n);
    SeededRng rng{seed};
    const auto r = vc_witness_search(n, target, budget, rng);
    json j;
    j["n"] = n;
    j["target"] = target;
    if (r.found) {
        // Re-check through the public predicate before claiming it.
        const bool ok = shatters(SampleSet{n, r.witness});
        if (!ok) throw VerificationFailure("witness failed verification");
        j["points"] = points_json(r.witness);
        j["verified"] = true;
    } else {
        j["points"] = json::array();
        j["verified"] = false;
    }
    j["evaluations"] = r.evaluations;
    if (!r.note.empty()) j["note"] = r.note;
    std::cout << j.dump(2) << '\n';
    return r.found ? 0 : 3;
}

int run_vc_construct(int sample_size, int t) {
    json j;
    if (t <= 1) {
        const auto s = construct_shattered_set(sample_size);
        j["n"] = s.n();
        j["points"] = points_json(s.points());
        j["verified"] = shatters(s);
    } else {
        const auto s = construct_shattered_set_dnf(sample_size, t);
        j["n"] = s.n();
        j["t"] = t;
        j["points"] = points_json(s.points());
        j["verified"] = shatters_dnf(s, t, block_local_terms(sample_size, t));
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int run_bound(std::uint64_t sample_size, std::uint64_t dvc, double delta, double e_in) {
    const double total = generalization_bound(e_in, sample_size, dvc, delta);
    json j;
    j["N"] = sample_size;
    j["dvc"] = dvc;
    j["delta"] = delta;
    j["e_in"] = e_in;
    j["growth_2N"] = sauer_bound(2 * sample_size, dvc).str();
    j["penalty"] = total - e_in;
    j["bound"] = total;
    std::cout << j.dump(2) << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

std::vector<std::uint32_t> parse_sizes(const std::string& text) {
    std::vector<std::uint32_t> out;
    std::stringstream ss{text};
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw ConfigError("empty entry in --sizes");
        std::size_t used = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("bad size '" + item + "'");
        }
        if (used != item.size() || v == 0 || v > 0xffffffffUL) throw ConfigError("bad size '" + item + "'");
        out.push_back(static_cast<std::uint32_t>(v));
    }
    if (out.empty()) throw ConfigError("--sizes is empty");
    return out;
}

struct ExperimentArgs {
    std::string config;
    std::optional<int> n;
    std::optional<std::string> sizes;
    std::optional<std::uint32_t> functions;
    std::optional<std::uint32_t> samples;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> tie_mode;
    std::optional<std::string> bin_width;
    std::optional<std::uint32_t> plant_monomial;
    std::optional<std::uint32_t> plant_complement;
    std::optional<int> t;
    std::optional<std::uint64_t> dnf_budget;
    std::optional<unsigned> workers;
    std::string out;
    std::string dump_table;
};

int run_experiment_cmd(const ExperimentArgs& a) {
    ExperimentConfig cfg;
    if (!a.config.empty()) {
        std::ifstream in{a.config};
        if (!in) throw ConfigError("cannot open config " + a.config);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError(std::string{"config parse error: "} + e.what());
        }
        cfg = config_from_json(j, cfg);
    }
    if (a.n) cfg.n = *a.n;
    if (a.sizes) cfg.sizes = parse_sizes(*a.sizes);
    if (a.functions) cfg.functions = *a.functions;
    if (a.samples) cfg.samples_per_function = *a.samples;
    if (a.seed) cfg.master_seed = *a.seed;
    if (a.tie_mode) cfg.tie_mode = parse_tie_mode(*a.tie_mode);
    if (a.bin_width) cfg.bin_width_micro = parse_micro(*a.bin_width);
    if (a.plant_monomial && a.plant_complement) throw ConfigError("choose one planted target");
    if (a.plant_monomial) cfg.planted = PlantedTarget{PlantedTarget::Kind::Monomial, MonomialId{*a.plant_monomial}};
    if (a.plant_complement) cfg.planted = PlantedTarget{PlantedTarget::Kind::Complement, MonomialId{*a.plant_complement}};
    if (a.t) cfg.dnf_terms = *a.t;
    if (a.dnf_budget) cfg.dnf_budget = *a.dnf_budget;
    if (a.workers) cfg.workers = *a.workers;
    cfg.validate();

    if (!a.dump_table.empty()) {
        std::ofstream dump{a.dump_table, std::ios::binary};
        if (!dump) throw std::runtime_error("cannot open " + a.dump_table);
        dump << "function_idx,table\n";
        for (std::uint32_t f = 0; f < cfg.functions; ++f) dump << f << ',' << target_function(cfg, f).to_hex() << '\n';
    }

    const auto summary = run_experiment_to_file(cfg, a.out);
    std::uint64_t total = 0;
    for (const auto& [size, count] : summary.records_per_size) total += count;
    std::fprintf(stderr, "wrote %llu records to %s (%.1f s)\n", static_cast<unsigned long long>(total), a.out.c_str(),
                 summary.wall_seconds);
    return 0;
}

int run_table1(const std::string& in, const std::string& tie_mode) {
    const auto records = read_records_csv(std::filesystem::path{in});
    std::vector<std::uint32_t> sizes;
    for (const auto& r : records) sizes.push_back(r.sample_size);
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    std::vector<std::string> warnings;
    const auto rows = aggregate_table(records, sizes, parse_tie_mode(tie_mode), &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "N,mean_e_in,mean_e_out,mean_gap,records,samples\n";
    for (const auto& row : rows) {
        std::cout << row.sample_size << ',' << rational_decimal(row.mean_e_in) << ','
                  << rational_decimal(row.mean_e_out) << ',' << rational_decimal(row.mean_gap) << ','
                  << row.record_count << ',' << row.cell_count << '\n';
    }
    return 0;
}

int run_histogram(const std::string& in, std::uint32_t sample_size, const std::string& bin_width,
                  const std::string& out) {
    const auto records = read_records_csv(std::filesystem::path{in});
    const auto bins = histogram(records, sample_size, parse_micro(bin_width));
    if (out.empty() || out == "-") {
        write_histogram_csv(std::cout, bins);
        return 0;
    }
    std::ofstream file{out, std::ios::binary};
    if (!file) throw std::runtime_error("cannot open " + out);
    write_histogram_csv(file, bins);
    if (!file) throw std::runtime_error("write to " + out + " failed");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exhaustive ERM and VC-dimension workbench for cubic DNF classes"};
    app.set_version_flag("--version", std::string{kToolVersion});
    app.require_subcommand(1);

    EnumArgs enum_args;
    auto* enum_cmd = app.add_subcommand("enum", "List H_n (or t-term DNFs) in canonical order");
    enum_cmd->add_option("--n", enum_args.n, "Cube dimension")->required();
    enum_cmd->add_option("--t", enum_args.t, "Terms per DNF")->check(CLI::PositiveNumber);
    enum_cmd->add_option("--limit", enum_args.limit, "Print at most this many");
    enum_cmd->add_option("--format", enum_args.format)->check(CLI::IsMember({"csv", "text"}));

    int erm_n = 0;
    std::string erm_dataset;
    auto* erm_cmd = app.add_subcommand("erm", "Exhaustive ERM over H_n on a labelled dataset");
    erm_cmd->add_option("--n", erm_n)->required();
    erm_cmd->add_option("--dataset", erm_dataset, "CSV with columns point,label")->required();

    auto* vc_cmd = app.add_subcommand("vc", "Shattering and VC dimension");
    vc_cmd->require_subcommand(1);
    int vc_n = 0;
    int vc_cap = 6;
    auto* vc_exact_cmd = vc_cmd->add_subcommand("exact", "Exact VC dimension of H_n by levelwise search");
    vc_exact_cmd->add_option("--n", vc_n)->required();
    vc_exact_cmd->add_option("--cap", vc_cap)->check(CLI::Range(1, 6));
    int w_n = 0;
    int w_target = 0;
    std::uint64_t w_budget = 100'000;
    std::uint64_t w_seed = 1;
    auto* vc_witness_cmd = vc_cmd->add_subcommand("witness", "Randomized search for a shattered set");
    vc_witness_cmd->add_option("--n", w_n)->required();
    vc_witness_cmd->add_option("--target", w_target)->required();
    vc_witness_cmd->add_option("--budget", w_budget);
    vc_witness_cmd->add_option("--seed", w_seed);
    int c_size = 0;
    int c_t = 1;
    auto* vc_construct_cmd = vc_cmd->add_subcommand("construct", "Explicit shattered set");
    vc_construct_cmd->add_option("--N", c_size)->required();
    vc_construct_cmd->add_option("--t", c_t)->check(CLI::PositiveNumber);

    std::uint64_t b_size = 0;
    std::uint64_t b_dvc = 0;
    double b_delta = 0.05;
    double b_ein = 0.0;
    auto* bound_cmd = app.add_subcommand("bound", "VC generalization bound");
    bound_cmd->add_option("--N", b_size)->required();
    bound_cmd->add_option("--dvc", b_dvc)->required();
    bound_cmd->add_option("--delta", b_delta)->required();
    bound_cmd->add_option("--ein", b_ein)->check(CLI::Range(0.0, 1.0));

    ExperimentArgs ex;
    auto* ex_cmd = app.add_subcommand("experiment", "Run the ERM experiment and write results CSV");
    ex_cmd->add_option("--config", ex.config, "JSON config; flags override its keys");
    ex_cmd->add_option("--n", ex.n);
    ex_cmd->add_option("--sizes", ex.sizes, "Comma-separated sample sizes");
    ex_cmd->add_option("--functions", ex.functions);
    ex_cmd->add_option("--samples", ex.samples, "Samples per function");
    ex_cmd->add_option("--seed", ex.seed);
    ex_cmd->add_option("--tie-mode", ex.tie_mode)->check(CLI::IsMember({"record-all", "average-per-sample"}));
    ex_cmd->add_option("--bin-width", ex.bin_width);
    ex_cmd->add_option("--plant-monomial", ex.plant_monomial, "Use this monomial id as every target");
    ex_cmd->add_option("--plant-complement", ex.plant_complement, "Use the complement of this monomial");
    ex_cmd->add_option("--t", ex.t, "Terms per DNF hypothesis");
    ex_cmd->add_option("--dnf-budget", ex.dnf_budget);
    ex_cmd->add_option("--workers", ex.workers, "0 = all hardware threads");
    ex_cmd->add_option("--dump-table", ex.dump_table, "Write target truth tables (hex) to this CSV");
    ex_cmd->add_option("--out", ex.out)->required();

    std::string t_in;
    std::string t_tie = "record-all";
    auto* table_cmd = app.add_subcommand("table1", "Per-N means from a results CSV");
    table_cmd->add_option("--in", t_in)->required();
    table_cmd->add_option("--tie-mode", t_tie)->check(CLI::IsMember({"record-all", "average-per-sample"}));

    std::string h_in;
    std::uint32_t h_size = 0;
    std::string h_width = "0.02";
    std::string h_out;
    auto* hist_cmd = app.add_subcommand("histogram", "Gap histogram at one N");
    hist_cmd->add_option("--in", h_in)->required();
    hist_cmd->add_option("--N", h_size)->required();
    hist_cmd->add_option("--bin-width", h_width);
    hist_cmd->add_option("--out", h_out, "Output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*enum_cmd) return run_enum(enum_args);
        if (*erm_cmd) return run_erm(erm_n, erm_dataset);
        if (*vc_exact_cmd) return run_vc_exact(vc_n, vc_cap);
        if (*vc_witness_cmd) return run_vc_witness(w_n, w_target, w_budget, w_seed);
        if (*vc_construct_cmd) return run_vc_construct(c_size, c_t);
        if (*bound_cmd) return run_bound(b_size, b_dvc, b_delta, b_ein);
        if (*ex_cmd) return run_experiment_cmd(ex);
        if (*table_cmd) return run_table1(t_in, t_tie);
        if (*hist_cmd) return run_histogram(h_in, h_size, h_width, h_out);
    } catch (const std::exception& e) {
        std::cerr << "ladlab: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
