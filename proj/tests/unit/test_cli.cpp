#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
    int status;
    std::string out;
};

Result run(const std::string& args) {
    const std::string cmd = std::string{LADLAB_CLI_PATH} + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int raw = pclose(pipe);
    return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "ladlab_test_cli";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in{p, std::ios::binary};
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("enum") {
    const auto r = run("enum --n 4 --limit 3");
    CHECK(r.status == 0);
    CHECK(r.out == "id,i,j,k,ai,aj,ak\n0,1,2,3,0,0,0\n1,1,2,3,0,0,1\n2,1,2,3,0,1,0\n");
    const auto full = run("enum --n 10");
    CHECK(std::count(full.out.begin(), full.out.end(), '\n') == 961);
    const auto pairs = run("enum --n 3 --t 2 --limit 2");
    CHECK(pairs.out == "rank,term_ids\n0,0;1\n1,0;2\n");
    CHECK(run("enum --n 4 --format text --limit 1").out == "0: ~x1 ~x2 ~x3\n");
    CHECK(run("enum --n 2").status != 0);
}

TEST_CASE("erm") {
    const auto data = scratch("data.csv");
    std::ofstream{data} << "point,label\n7,1\n0,0\n";
    const auto r = run("erm --n 3 --dataset " + data.string());
    CHECK(r.status == 0);
    CHECK(r.out == "0.000000,1\n7\n");  // only x1 x2 x3 is 1 at 7 and 0 at 0
    std::ofstream{data} << "point,label\n9,1\n";
    CHECK(run("erm --n 3 --dataset " + data.string()).status != 0);
}

TEST_CASE("vc subcommands") {
    const auto c = nlohmann::json::parse(run("vc construct --N 3").out);
    CHECK(c["n"] == 6);
    CHECK(c["points"] == nlohmann::json::array({3, 43, 51}));
    CHECK(c["verified"] == true);
    const auto d = nlohmann::json::parse(run("vc construct --N 2 --t 2").out);
    CHECK(d["n"] == 8);
    CHECK(d["verified"] == true);
    const auto e = nlohmann::json::parse(run("vc exact --n 5").out);
    CHECK(e["vc"] == 2);
    CHECK(e["mode"] == "exact");
    const auto w = run("vc witness --n 10 --target 4 --budget 100000 --seed 3");
    CHECK(w.status == 0);
    const auto wj = nlohmann::json::parse(w.out);
    CHECK(wj["verified"] == true);
    CHECK(wj["points"].size() == 4);
    CHECK(run("vc witness --n 3 --target 4 --budget 10 --seed 3").status == 3);
}

TEST_CASE("bound") {
    const auto j = nlohmann::json::parse(run("bound --N 40 --dvc 4 --delta 0.05 --ein 0.35").out);
    CHECK(j["bound"].get<double>() == doctest::Approx(2.2843500923370312));
    CHECK(j["growth_2N"] == "1666981");
    CHECK(run("bound --N 40 --dvc 4 --delta 1.5").status != 0);
}

TEST_CASE("experiment, table1, histogram") {
    const auto csv = scratch("res.csv");
    const auto cfg = scratch("cfg.json");
    const auto tables = scratch("tables.csv");
    std::ofstream{cfg} << R"({"n": 6, "sizes": [2, 8], "functions": 3, "samples_per_function": 4, "master_seed": 5})";
    const auto r = run("experiment --config " + cfg.string() + " --functions 2 --workers 2 --dump-table " +
                       tables.string() + " --out " + csv.string());
    REQUIRE(r.status == 0);
    const auto manifest = nlohmann::json::parse(slurp(scratch("res.manifest.json")));
    CHECK(manifest["config"]["functions"] == 2);  // flag beats file
    CHECK(manifest["config"]["n"] == 6);
    CHECK(manifest["status"] == "complete");
    const auto dumped = slurp(tables);
    CHECK(dumped.rfind("function_idx,table\n0,n=6:", 0) == 0);

    const auto t = run("table1 --in " + csv.string());
    CHECK(t.status == 0);
    CHECK(t.out.rfind("N,mean_e_in,mean_e_out,mean_gap,records,samples\n2,", 0) == 0);
    CHECK(std::count(t.out.begin(), t.out.end(), '\n') == 3);

    const auto h = scratch("hist.csv");
    CHECK(run("histogram --in " + csv.string() + " --N 8 --bin-width 0.5 --out " + h.string()).status == 0);
    const auto hist = slurp(h);
    CHECK(hist.rfind("lower_edge,count\n-1.000000,", 0) == 0);
    CHECK(run("histogram --in " + csv.string() + " --N 3 --bin-width 0.5").status != 0);
    CHECK(run("experiment --n 6 --sizes 2,x --out " + csv.string()).status != 0);
    CHECK(run("experiment --n 6 --tie-mode nope --out " + csv.string()).status != 0);
}
