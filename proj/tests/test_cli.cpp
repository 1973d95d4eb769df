#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmair/cli.hpp"

namespace fs = std::filesystem;
using cmair::cli::run;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("cmair_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

int count_lines(const std::string& text) {
    int n = 0;
    for (const char ch : text)
        if (ch == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("air sweep emits the advertised grid: 121 points x 5 schemes") {
    TempDir tmp;
    const std::string out = tmp.file("air.csv");
    const int code = run({"air", "--mod", "64qam", "--snr", "0:30:0.25", "--schemes", "all",
                          "--workers", "4", "--out", out});
    REQUIRE(code == 0);
    const std::string text = slurp(out);
    // 2 comment lines + header + 121*5 rows
    CHECK(count_lines(text) == 2 + 1 + 121 * 5);
    CHECK(text.find("snr_db,scheme,rate_bpcu,stderr\n") != std::string::npos);
}

TEST_CASE("air sweep output is byte-identical across runs and worker counts") {
    TempDir tmp;
    const std::string a = tmp.file("a.csv"), b = tmp.file("b.csv"), c = tmp.file("c.csv");
    REQUIRE(run({"air", "--mod", "16qam", "--snr", "0:10:1", "--schemes", "all", "--method", "mc",
                 "--samples", "200000", "--seed", "9", "--workers", "1", "--out", a}) == 0);
    REQUIRE(run({"air", "--mod", "16qam", "--snr", "0:10:1", "--schemes", "all", "--method", "mc",
                 "--samples", "200000", "--seed", "9", "--workers", "1", "--out", b}) == 0);
    REQUIRE(run({"air", "--mod", "16qam", "--snr", "0:10:1", "--schemes", "all", "--method", "mc",
                 "--samples", "200000", "--seed", "9", "--workers", "4", "--out", c}) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a) == slurp(c));
}

TEST_CASE("dmc json is parseable, stochastic, and seed-reproducible") {
    TempDir tmp;
    const std::string a = tmp.file("a.json"), b = tmp.file("b.json");
    REQUIRE(run({"dmc", "--mod", "16qam", "--snr", "11", "--method", "mc", "--samples", "300000",
                 "--seed", "4", "--workers", "4", "--out", a}) == 0);
    REQUIRE(run({"dmc", "--mod", "16qam", "--snr", "11", "--method", "mc", "--samples", "300000",
                 "--seed", "4", "--workers", "1", "--out", b}) == 0);
    CHECK(slurp(a) == slurp(b));

    const auto doc = nlohmann::json::parse(slurp(a));
    CHECK(doc["schema"] == "cmair.dmc.v1");
    CHECK(doc["order"] == 16);
    CHECK(doc["method"] == "monte_carlo");
    CHECK(doc["seed"] == 4);
    CHECK(doc["transition"].size() == 16);
    double row0 = 0.0;
    for (const auto& v : doc["transition"][0]) row0 += v.get<double>();
    CHECK(row0 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(doc["eps_levels"].size() == 4);
}

TEST_CASE("threshold subcommand emits p_star in (0,1) with config echo") {
    TempDir tmp;
    const std::string out = tmp.file("th.json");
    REQUIRE(run({"threshold", "--q", "16", "--n", "15", "--t", "2", "--mode", "idealized", "--L",
                 "1", "--w", "1", "--iters", "5000", "--bracket", "0.01,0.5", "--out", out}) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    const double p_star = doc["p_star"].get<double>();
    CHECK(p_star > 0.0);
    CHECK(p_star < 1.0);
    CHECK(doc["config"]["q"] == 16);
    CHECK(doc["config"]["mode"] == "idealized");
    CHECK(doc["iterations_used"].get<int>() > 0);
}

TEST_CASE("threshold at the full-length GF(256) code lands strictly inside (0,1)") {
    TempDir tmp;
    const std::string out = tmp.file("th255.json");
    REQUIRE(run({"threshold", "--q", "256", "--n", "255", "--t", "4", "--mode", "idealized",
                 "--L", "1", "--w", "1", "--iters", "20000", "--target-ser", "1e-6", "--bracket",
                 "1e-4,0.2", "--out", out}) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    const double p_star = doc["p_star"].get<double>();
    CHECK(p_star > 0.0);
    CHECK(p_star < 1.0);
    CHECK(doc["spectral_efficiency_bpcu"].get<double>() ==
          doctest::Approx((1.0 - 16.0 / 255.0) * 8.0).epsilon(1e-12));
}

TEST_CASE("threshold presets: builtin and file-based agree") {
    TempDir tmp;
    const std::string builtin_out = tmp.file("b.json"), file_out = tmp.file("f.json");
    REQUIRE(run({"threshold", "--preset", "oh-33.33", "--mode", "idealized", "--L", "1", "--w",
                 "1", "--iters", "4000", "--bracket", "0.005,0.4", "--out", builtin_out}) == 0);
    const std::string presets = tmp.file("presets.cfg");
    {
        std::ofstream f(presets);
        f << "# test copy\noh-33.33 q=256 n=64 t=4\n";
    }
    REQUIRE(run({"threshold", "--preset", "oh-33.33", "--presets-file", presets, "--mode",
                 "idealized", "--L", "1", "--w", "1", "--iters", "4000", "--bracket", "0.005,0.4",
                 "--out", file_out}) == 0);
    const auto a = nlohmann::json::parse(slurp(builtin_out));
    const auto b = nlohmann::json::parse(slurp(file_out));
    CHECK(a["p_star"] == b["p_star"]);
    CHECK(a["config"]["n"] == 64);
    CHECK(run({"threshold", "--preset", "no-such", "--L", "1", "--w", "1"}) == 2);
}

TEST_CASE("de-trace emits one row per iteration and position") {
    TempDir tmp;
    const std::string out = tmp.file("trace.csv");
    REQUIRE(run({"de-trace", "--q", "16", "--n", "15", "--t", "2", "--mode", "idealized", "--L",
                 "12", "--w", "2", "--window", "full", "--iters", "7", "--tol", "0", "--p", "0.1",
                 "--out", out}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("iteration,position,x\n") != std::string::npos);
    CHECK(count_lines(text) == 2 + 1 + 7 * 12);
}

TEST_CASE("reach emits rows plus a summary with exact PM doubling") {
    TempDir tmp;
    const std::string out = tmp.file("reach.csv");
    REQUIRE(run({"reach", "--mod", "16qam", "--scheme", "hdd_bw", "--target-se", "6", "--out",
                 out}) == 0);
    const std::string text = slurp(out);
    CHECK(text.find("distance_km,snr_db,rate_bpcu\n") != std::string::npos);
    const auto pos = text.find("# summary ");
    REQUIRE(pos != std::string::npos);
    const auto doc = nlohmann::json::parse(text.substr(pos + 10));
    CHECK(doc["target_se_pm"] == 6.0);
    CHECK(doc["target_per_pol"] == 3.0);
    CHECK(doc["rate_pm"].get<double>() ==
          doctest::Approx(2.0 * doc["rate_per_pol"].get<double>()).epsilon(1e-15));
    CHECK(doc["reach_spans"].get<int>() >= 1);
}

TEST_CASE("oracle bdd-stats round-trips the exhaustive fixture") {
    TempDir tmp;
    const std::string out = tmp.file("oracle.json");
    REQUIRE(run({"oracle", "bdd-stats", "--q", "8", "--n", "7", "--t", "1", "--i-max", "3",
                 "--budget", "1000000", "--out", out}) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["enumeration"] == "exhaustive");
    CHECK(doc["per_i_error_given_error"][3].get<double>() ==
          doctest::Approx(48.0 / 49.0).epsilon(1e-15));
    CHECK(doc["per_i_error_given_correct"][2].get<double>() ==
          doctest::Approx(1.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run({"no-such-command"}) == 2);
    CHECK(run({}) == 2);
    CHECK(run({"air", "--mod", "13qam"}) == 2);
    CHECK(run({"air", "--mod", "16qam", "--snr", "5:1:1"}) == 2);
    CHECK(run({"dmc", "--mod", "16qam", "--method", "warp"}) == 2);
    CHECK(run({"threshold", "--q", "16", "--n", "15", "--t", "2", "--L", "1", "--w", "1",
               "--bracket", "0.5,0.2"}) == 2);
}

TEST_CASE("--help succeeds") {
    CHECK(run({"--help"}) == 0);
}

TEST_CASE("runtime failures exit with code 1") {
    CHECK(run({"dmc", "--mod", "16qam", "--snr", "10", "--out",
               "/nonexistent-dir-for-sure/out.json"}) == 1);
}

TEST_CASE("dmc embeds the constellation fixture") {
    TempDir tmp;
    const std::string out = tmp.file("dmc.json");
    REQUIRE(run({"dmc", "--mod", "qpsk", "--snr", "10", "--out", out}) == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["constellation"]["points"].size() == 4);
    CHECK(doc["constellation"]["labels"].size() == 4);
}
