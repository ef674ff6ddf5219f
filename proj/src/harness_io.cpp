#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "ladlab/errors.hpp"
#include "ladlab/harness.hpp"
#include "ladlab/kernels.hpp"

namespace ladlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Config JSON

json config_to_json(const ExperimentConfig& cfg) {
    json j;
    j["n"] = cfg.n;
    j["sizes"] = cfg.sizes;
    j["functions"] = cfg.functions;
    j["samples_per_function"] = cfg.samples_per_function;
    j["master_seed"] = cfg.master_seed;
    j["tie_mode"] = to_string(cfg.tie_mode);
    j["bin_width"] = format_decimal(cfg.bin_width_micro, kMicro);
    if (cfg.planted) {
        j["planted"] = {{"kind", cfg.planted->kind == PlantedTarget::Kind::Monomial ? "monomial" : "complement"},
                        {"id", cfg.planted->id.value}};
    }
    j["dnf_terms"] = cfg.dnf_terms;
    j["dnf_budget"] = cfg.dnf_budget;
    return j;
}

namespace {

template <typename T>
T get_key(const json& j, const char* key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string{"config key '"} + key + "': " + e.what());
    }
}

std::int64_t bin_width_from_json(const json& v) {
    if (v.is_string()) return parse_micro(v.get<std::string>());
    if (v.is_number()) {
        const double x = v.get<double>();
        if (!(x > 0) || x > 2) throw ConfigError("bin_width must lie in (0, 2]");
        return std::llround(x * kMicro);
    }
    throw ConfigError("bin_width must be a number or a decimal string");
}

}  // namespace

ExperimentConfig config_from_json(const json& j, ExperimentConfig base) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const char* known[] = {"n",        "sizes",   "functions", "samples_per_function", "master_seed",
                                  "tie_mode", "bin_width", "planted", "dnf_terms",            "dnf_budget",
                                  "workers"};
    for (const auto& [key, _] : j.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    ExperimentConfig cfg = std::move(base);
    if (j.contains("n")) cfg.n = get_key<int>(j, "n");
    if (j.contains("sizes")) cfg.sizes = get_key<std::vector<std::uint32_t>>(j, "sizes");
    if (j.contains("functions")) cfg.functions = get_key<std::uint32_t>(j, "functions");
    if (j.contains("samples_per_function")) cfg.samples_per_function = get_key<std::uint32_t>(j, "samples_per_function");
    if (j.contains("master_seed")) cfg.master_seed = get_key<std::uint64_t>(j, "master_seed");
    if (j.contains("tie_mode")) cfg.tie_mode = parse_tie_mode(get_key<std::string>(j, "tie_mode"));
    if (j.contains("bin_width")) cfg.bin_width_micro = bin_width_from_json(j["bin_width"]);
    if (j.contains("planted")) {
        const auto& p = j["planted"];
        const auto kind = get_key<std::string>(p, "kind");
        PlantedTarget t;
        if (kind == "monomial") t.kind = PlantedTarget::Kind::Monomial;
        else if (kind == "complement") t.kind = PlantedTarget::Kind::Complement;
        else throw ConfigError("planted.kind must be monomial or complement");
        t.id = MonomialId{get_key<std::uint32_t>(p, "id")};
        cfg.planted = t;
    }
    if (j.contains("dnf_terms")) cfg.dnf_terms = get_key<int>(j, "dnf_terms");
    if (j.contains("dnf_budget")) cfg.dnf_budget = get_key<std::uint64_t>(j, "dnf_budget");
    if (j.contains("workers")) cfg.workers = get_key<unsigned>(j, "workers");
    return cfg;
}

// ---------------------------------------------------------------------------
// Manifest

std::filesystem::path manifest_path(const std::filesystem::path& csv_path) {
    auto p = csv_path;
    p.replace_extension(".manifest.json");
    return p;
}

void write_manifest(const std::filesystem::path& csv_path, const ExperimentConfig& cfg, const RunSummary& summary,
                    std::string_view status) {
    json counts = json::object();
    for (const auto& [size, count] : summary.records_per_size) counts[std::to_string(size)] = count;
    json m;
    m["tool"] = "ladlab";
    m["version"] = std::string{kToolVersion};
    m["status"] = std::string{status};
    m["results"] = csv_path.filename().string();
    m["config"] = config_to_json(cfg);
    m["wall_seconds"] = summary.wall_seconds;
    m["records_per_size"] = counts;
    m["kernels"] = std::string{kernels::active().name};
    std::ofstream out{manifest_path(csv_path), std::ios::binary | std::ios::trunc};
    out << m.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write manifest " + manifest_path(csv_path).string());
}

// ---------------------------------------------------------------------------
// Records CSV

std::string_view results_header() { return "n,N,function_idx,sample_idx,hypothesis_id,e_in,e_out,gap"; }

std::string to_csv_line(const ExperimentRecord& r) {
    const SignedRatio g = r.gap();
    std::string line;
    line.reserve(80);
    line += std::to_string(r.n);
    line += ',';
    line += std::to_string(r.sample_size);
    line += ',';
    line += std::to_string(r.function_idx);
    line += ',';
    line += std::to_string(r.sample_idx);
    line += ',';
    line += std::to_string(r.hypothesis_id);
    line += ',';
    line += r.e_in.to_string();
    line += ',';
    line += r.e_out.to_string();
    line += ',';
    line += format_decimal(g.numerator, g.denominator);
    return line;
}

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records, bool header) {
    if (header) out << results_header() << '\n';
    for (const auto& r : records) out << to_csv_line(r) << '\n';
}

namespace {

template <typename T>
T parse_int(std::string_view field, std::size_t line_no) {
    T value{};
    const auto* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad integer '" + std::string{field} + "'");
    }
    return value;
}

// Exact num/den when the 6-digit rendering pins it down, else micro/10^6.
ErrorValue recover(std::string_view field, std::uint64_t den, std::size_t line_no) {
    std::int64_t micro = 0;
    try {
        micro = parse_micro(field);
    } catch (const ConfigError&) {
        throw std::runtime_error("line " + std::to_string(line_no) + ": bad error value '" + std::string{field} + "'");
    }
    if (micro > kMicro) throw std::runtime_error("line " + std::to_string(line_no) + ": error value above 1");
    if (den > 0 && den <= static_cast<std::uint64_t>(kMicro)) {
        const auto num = static_cast<std::uint64_t>((static_cast<__int128>(micro) * den * 2 + kMicro) / (2 * kMicro));
        if (num <= den && format_decimal(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)) == field) {
            return ErrorValue{num, den};
        }
    }
    return ErrorValue{static_cast<std::uint64_t>(micro), static_cast<std::uint64_t>(kMicro)};
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw EmptyInput("empty results file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != results_header()) throw std::runtime_error("unexpected results header '" + line + "'");
    std::vector<ExperimentRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 8) throw std::runtime_error("line " + std::to_string(line_no) + ": expected 8 fields");
        ExperimentRecord r;
        r.n = parse_int<int>(f[0], line_no);
        r.sample_size = parse_int<std::uint32_t>(f[1], line_no);
        r.function_idx = parse_int<std::uint32_t>(f[2], line_no);
        r.sample_idx = parse_int<std::uint32_t>(f[3], line_no);
        r.hypothesis_id = parse_int<std::int64_t>(f[4], line_no);
        check_dimension(r.n);
        if (r.sample_size == 0) throw std::runtime_error("line " + std::to_string(line_no) + ": N must be positive");
        r.e_in = recover(f[5], r.sample_size, line_no);
        r.e_out = recover(f[6], r.hypothesis_id < 0 ? 0 : cube_size(r.n), line_no);
        out.push_back(r);
    }
    return out;
}

std::vector<ExperimentRecord> read_records_csv(const std::filesystem::path& path) {
    std::ifstream in{path, std::ios::binary};
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_records_csv(in);
}

void write_histogram_csv(std::ostream& out, std::span<const HistogramBin> bins) {
    out << "lower_edge,count\n";
    for (const auto& b : bins) {
        // Edges can be negative; format_decimal handles the sign.
        out << format_decimal(b.lower_edge_micro, kMicro) << ',' << b.count << '\n';
    }
}

}  // namespace ladlab
