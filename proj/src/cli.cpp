#include "cmair/cli.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmair/air.hpp"
#include "cmair/channel.hpp"
#include "cmair/constellation.hpp"
#include "cmair/de.hpp"
#include "cmair/errors.hpp"
#include "cmair/link.hpp"
#include "cmair/oracles.hpp"
#include "cmair/serialize.hpp"
#include "cmair/version.hpp"

namespace cmair::cli {

namespace {

using nlohmann::ordered_json;

struct Common {
    std::string out;  // empty = stdout
    std::uint64_t seed = 1;
    int workers = 1;
    bool stamp = false;  // timestamps are opt-in so default outputs stay byte-reproducible
};

void add_common(CLI::App* sub, Common& common) {
    sub->add_option("--out", common.out, "output path (default: standard output)");
    sub->add_option("--seed", common.seed, "base seed for every random substream")
        ->capture_default_str();
    sub->add_option("--workers", common.workers, "worker threads; results are identical for any count")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    sub->add_flag("--stamp", common.stamp, "add a wall-clock timestamp to the manifest");
}

ordered_json make_manifest(const std::string& command, const Common& common,
                           const std::map<std::string, std::string>& params) {
    ordered_json manifest;
    manifest["command"] = command;
    ordered_json p;
    for (const auto& [key, value] : params) p[key] = value;
    manifest["parameters"] = p;
    manifest["seed"] = common.seed;
    manifest["tool_version"] = kVersion;
    if (common.stamp) {
        const auto now = std::chrono::system_clock::now();
        const std::time_t tt = std::chrono::system_clock::to_time_t(now);
        char buf[32];
        std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&tt));
        manifest["timestamp"] = buf;
    }
    return manifest;
}

void write_output(const Common& common, const std::string& content) {
    if (common.out.empty()) {
        std::fwrite(content.data(), 1, content.size(), stdout);
        return;
    }
    std::ofstream out(common.out, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + common.out);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

int parse_modulation(const std::string& name) {
    if (name == "qpsk" || name == "4qam") return 4;
    if (name == "16qam") return 16;
    if (name == "64qam") return 64;
    if (name == "256qam") return 256;
    throw config_error("unknown modulation '" + name + "'; expected qpsk/4qam, 16qam, 64qam, 256qam");
}

struct SnrGrid {
    double start = 0.0, stop = 0.0, step = 1.0;
    int count() const {
        return static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    }
    double at(int i) const { return start + i * step; }
};

SnrGrid parse_grid(const std::string& text) {
    SnrGrid grid;
    char colon1 = 0, colon2 = 0;
    std::istringstream in(text);
    if (!(in >> grid.start >> colon1 >> grid.stop >> colon2 >> grid.step) || colon1 != ':' ||
        colon2 != ':' || grid.step <= 0.0 || grid.stop < grid.start)
        throw config_error("bad SNR range '" + text + "'; expected start:stop:step in dB");
    return grid;
}

std::vector<Scheme> parse_scheme_list(const std::string& text) {
    if (text == "all")
        return {Scheme::sdd_sw, Scheme::hdchad_sw, Scheme::hdd_sw, Scheme::hdchad_bw,
                Scheme::hdd_bw};
    std::vector<Scheme> schemes;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) schemes.push_back(parse_scheme(item));
    if (schemes.empty()) throw config_error("empty scheme list");
    return schemes;
}

// --- presets --------------------------------------------------------------

struct Preset {
    int q, n, t;
};

// The named staircase component presets (w = 2 ensembles over GF(256), t = 4);
// staircase overhead (n-k)/k of the coupled code is 4t/(n-4t).
const std::map<std::string, Preset>& builtin_presets() {
    static const std::map<std::string, Preset> presets = {
        {"oh-8.33", {256, 208, 4}},  {"oh-11.11", {256, 160, 4}}, {"oh-14.29", {256, 128, 4}},
        {"oh-20", {256, 96, 4}},     {"oh-25", {256, 80, 4}},     {"oh-33.33", {256, 64, 4}},
    };
    return presets;
}

Preset load_preset(const std::string& name, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw config_error("cannot read presets file " + file);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream row(line);
            std::string preset_name, kv;
            row >> preset_name;
            if (preset_name != name) continue;
            Preset p{0, 0, 0};
            while (row >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw config_error("bad preset line: " + line);
                const std::string key = kv.substr(0, eq);
                const int value = std::stoi(kv.substr(eq + 1));
                if (key == "q") p.q = value;
                else if (key == "n") p.n = value;
                else if (key == "t") p.t = value;
                else throw config_error("unknown preset key '" + key + "'");
            }
            if (p.q == 0 || p.n == 0 || p.t == 0)
                throw config_error("preset '" + name + "' must define q, n and t");
            return p;
        }
        throw config_error("preset '" + name + "' not found in " + file);
    }
    const auto it = builtin_presets().find(name);
    if (it == builtin_presets().end()) throw config_error("unknown preset '" + name + "'");
    return it->second;
}

// --- subcommand bodies ----------------------------------------------------

struct DmcArgs {
    std::string mod = "16qam";
    double snr_db = 10.0;
    std::string method = "analytic";
    std::uint64_t samples = 1000000;
};

int run_dmc(const DmcArgs& args, const Common& common) {
    const Constellation c = build_square_qam(parse_modulation(args.mod));
    DmcModel dmc;
    if (args.method == "analytic") {
        dmc = hard_dmc_analytic(c, args.snr_db);
    } else if (args.method == "mc") {
        dmc = hard_dmc_montecarlo(c, args.snr_db, args.samples, common.seed, common.workers);
    } else {
        throw config_error("dmc --method must be analytic or mc");
    }
    ordered_json doc;
    doc["schema"] = "cmair.dmc.v1";
    doc["manifest"] = make_manifest("dmc", common,
                                    {{"mod", args.mod},
                                     {"snr_db", fmt_g12(args.snr_db)},
                                     {"method", args.method},
                                     {"samples", std::to_string(args.samples)}});
    doc["order"] = dmc.order;
    doc["bits_per_symbol"] = c.bits_per_symbol;
    doc["constellation"] = constellation_to_json(c);
    doc["snr_db"] = dmc.snr_db;
    doc["method"] = dmc.method;
    doc["samples"] = dmc.samples;
    doc["seed"] = dmc.seed;
    doc["delta"] = dmc.delta;
    doc["eps_levels"] = std::vector<double>(dmc.eps_levels.begin(), dmc.eps_levels.end());
    doc["eps_bar"] = dmc.eps_bar;
    ordered_json rows = ordered_json::array();
    for (int k = 0; k < dmc.order; ++k) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < dmc.order; ++j) row.push_back(dmc.transition(k, j));
        rows.push_back(row);
    }
    doc["transition"] = rows;
    write_output(common, doc.dump(2) + "\n");
    return 0;
}

struct AirArgs {
    std::string mod = "64qam";
    std::string snr = "0:30:1";
    std::string schemes = "all";
    std::string method = "gh";
    int gh_nodes = 64;
    std::uint64_t samples = 1000000;
};

int run_air(const AirArgs& args, const Common& common) {
    const Constellation c = build_square_qam(parse_modulation(args.mod));
    const SnrGrid grid = parse_grid(args.snr);
    const std::vector<Scheme> schemes = parse_scheme_list(args.schemes);
    SddMethod method;
    if (args.method == "gh") method = SddMethod::gauss_hermite;
    else if (args.method == "mc") method = SddMethod::monte_carlo;
    else throw config_error("air --method must be gh or mc");

    const int n_points = grid.count();
    std::vector<std::string> blocks(n_points);
    const int inner_workers = n_points == 1 ? common.workers : 1;
    run_chunks(n_points, common.workers, [&](std::int64_t idx) {
        const double snr_db = grid.at(static_cast<int>(idx));
        SddPrecision precision;
        precision.gh_nodes = args.gh_nodes;
        precision.mc_samples = args.samples;
        precision.seed = derive_seed(common.seed, static_cast<std::uint64_t>(idx));
        precision.workers = inner_workers;
        std::string block;
        for (const Scheme scheme : schemes) {
            const RateEstimate est = scheme_rate(c, scheme, snr_db, method, precision);
            block += fmt_g12(snr_db);
            block += ',';
            block += scheme_name(scheme);
            block += ',';
            block += fmt_g12(est.rate);
            block += ',';
            block += fmt_g12(est.std_err);
            block += '\n';
        }
        blocks[idx] = std::move(block);
    });

    std::string content = "# cmair.air.v1\n# manifest ";
    content += make_manifest("air", common,
                             {{"mod", args.mod},
                              {"snr", args.snr},
                              {"schemes", args.schemes},
                              {"method", args.method},
                              {"gh_nodes", std::to_string(args.gh_nodes)},
                              {"samples", std::to_string(args.samples)}})
                   .dump();
    content += "\nsnr_db,scheme,rate_bpcu,stderr\n";
    for (const auto& block : blocks) content += block;
    write_output(common, content);
    return 0;
}

struct CodeArgs {
    int q = 256, n = 255, t = 4;
    std::string mode = "miscorrection_aware";
    int spatial_len = 1;
    int coupling_w = 1;
    std::string window = "full";
    int iters = 1000;
    double tol = 1e-12;
    double target_ser = 1e-6;
    std::string preset;
    std::string presets_file;
};

BddModel parse_mode(const std::string& mode) {
    if (mode == "miscorrection_aware") return BddModel::miscorrection_aware;
    if (mode == "idealized") return BddModel::idealized;
    throw config_error("mode must be miscorrection_aware or idealized");
}

DeConfig build_de_config(const CodeArgs& args) {
    DeConfig config;
    config.spatial_len = args.spatial_len;
    config.coupling_w = args.coupling_w;
    if (args.window == "full") config.window = 0;
    else config.window = std::stoi(args.window);
    config.max_iters = args.iters;
    config.convergence_tol = args.tol;
    config.target_error = args.target_ser;
    validate(config);
    return config;
}

ComponentCodeSpec build_spec(CodeArgs& args) {
    if (!args.preset.empty()) {
        const Preset p = load_preset(args.preset, args.presets_file);
        args.q = p.q;
        args.n = p.n;
        args.t = p.t;
    }
    return ComponentCodeSpec(args.q, args.n, args.t);
}

ordered_json code_config_json(const CodeArgs& args) {
    ordered_json j;
    j["q"] = args.q;
    j["n"] = args.n;
    j["t"] = args.t;
    j["mode"] = args.mode;
    j["L"] = args.spatial_len;
    j["w"] = args.coupling_w;
    j["window"] = args.window;
    j["iters"] = args.iters;
    j["convergence_tol"] = args.tol;
    j["target_ser"] = args.target_ser;
    return j;
}

int run_threshold(CodeArgs args, std::pair<double, double> bracket, const Common& common) {
    const ComponentCodeSpec spec = build_spec(args);
    const DeConfig config = build_de_config(args);
    const ThresholdResult res =
        threshold(spec, config, bracket.first, bracket.second, parse_mode(args.mode));
    ordered_json doc;
    doc["schema"] = "cmair.threshold.v1";
    doc["manifest"] = make_manifest("threshold", common,
                                    {{"q", std::to_string(args.q)},
                                     {"n", std::to_string(args.n)},
                                     {"t", std::to_string(args.t)},
                                     {"mode", args.mode},
                                     {"L", std::to_string(args.spatial_len)},
                                     {"w", std::to_string(args.coupling_w)},
                                     {"window", args.window},
                                     {"iters", std::to_string(args.iters)},
                                     {"target_ser", fmt_g12(args.target_ser)},
                                     {"bracket", fmt_g12(bracket.first) + "," + fmt_g12(bracket.second)}});
    doc["p_star"] = res.p_star;
    doc["config"] = code_config_json(args);
    doc["iterations_used"] = res.bisection_steps;
    const double code_rate = std::max(0.0, 1.0 - 4.0 * args.t / args.n);
    doc["code_rate"] = code_rate;
    doc["spectral_efficiency_bpcu"] = code_rate * std::log2(static_cast<double>(args.q));
    write_output(common, doc.dump(2) + "\n");
    return 0;
}

int run_de_trace(CodeArgs args, double p_channel, const Common& common) {
    const ComponentCodeSpec spec = build_spec(args);
    const DeConfig config = build_de_config(args);
    std::string rows;
    run_de(spec, p_channel, config, parse_mode(args.mode),
           [&](int iteration, const Eigen::VectorXd& x) {
               for (Eigen::Index pos = 0; pos < x.size(); ++pos) {
                   rows += std::to_string(iteration);
                   rows += ',';
                   rows += std::to_string(pos + 1);
                   rows += ',';
                   rows += fmt_g12(x[pos]);
                   rows += '\n';
               }
           });
    std::string content = "# cmair.de-trace.v1\n# manifest ";
    auto params = std::map<std::string, std::string>{
        {"q", std::to_string(args.q)},       {"n", std::to_string(args.n)},
        {"t", std::to_string(args.t)},       {"mode", args.mode},
        {"L", std::to_string(args.spatial_len)}, {"w", std::to_string(args.coupling_w)},
        {"window", args.window},             {"iters", std::to_string(args.iters)},
        {"p", fmt_g12(p_channel)}};
    content += make_manifest("de-trace", common, params).dump();
    content += "\niteration,position,x\n";
    content += rows;
    write_output(common, content);
    return 0;
}

struct ReachArgs {
    std::string mod = "16qam";
    std::string scheme = "hdd_bw";
    double target_se_pm = 6.0;  // bits per symbol over two polarizations
    int channels = 81;
    double spacing_ghz = 32.0;
    double span_km = 80.0;
    double nf_db = 4.5;
    std::optional<double> nli_coeff;
    int extra_rows = 5;
};

int run_reach(const ReachArgs& args, const Common& common) {
    const Constellation c = build_square_qam(parse_modulation(args.mod));
    LinkModel link;
    link.channel_count = args.channels;
    link.channel_spacing_ghz = args.spacing_ghz;
    link.span_length_km = args.span_km;
    link.edfa_noise_figure_db = args.nf_db;
    link.nli_coefficient = args.nli_coeff;
    const Scheme scheme = parse_scheme(args.scheme);
    const double target_per_pol = args.target_se_pm / 2.0;
    const ReachResult res = reach(link, c, scheme, target_per_pol);

    std::string content = "# cmair.reach.v1\n# manifest ";
    std::map<std::string, std::string> params{
        {"mod", args.mod},
        {"scheme", args.scheme},
        {"target_se", fmt_g12(args.target_se_pm)},
        {"channels", std::to_string(args.channels)},
        {"spacing_ghz", fmt_g12(args.spacing_ghz)},
        {"span_km", fmt_g12(args.span_km)},
        {"nf_db", fmt_g12(args.nf_db)}};
    if (args.nli_coeff) params["nli_coeff"] = fmt_g12(*args.nli_coeff);
    content += make_manifest("reach", common, params).dump();
    content += "\ndistance_km,snr_db,rate_bpcu\n";
    for (int n = 1; n <= res.spans + args.extra_rows; ++n) {
        const LaunchOptimum opt = optimize_launch_power(link, n);
        const double rate = scheme_rate(c, scheme, opt.snr_db).rate;
        content += fmt_g12(n * link.span_length_km);
        content += ',';
        content += fmt_g12(opt.snr_db);
        content += ',';
        content += fmt_g12(rate);
        content += '\n';
    }
    ordered_json summary;
    summary["reach_spans"] = res.spans;
    summary["reach_km"] = res.distance_km;
    summary["snr_db"] = res.snr_db;
    summary["target_se_pm"] = args.target_se_pm;
    summary["target_per_pol"] = target_per_pol;
    summary["rate_per_pol"] = res.rate_per_pol;
    summary["rate_pm"] = 2.0 * res.rate_per_pol;
    content += "# summary " + summary.dump() + "\n";
    write_output(common, content);
    return 0;
}

struct OracleArgs {
    int q = 8, n = 7, t = 1;
    int i_max = -1;
    std::uint64_t budget = 1000000;
};

int run_oracle_bdd(const OracleArgs& args, const Common& common) {
    const int i_max = args.i_max < 0 ? args.n - 1 : args.i_max;
    const BddStats stats =
        enumerate_bdd_stats(args.q, args.n, args.t, i_max, args.budget, common.seed, common.workers);
    ordered_json doc;
    doc["schema"] = "cmair.bddstats.v1";
    doc["manifest"] = make_manifest("oracle", common,
                                    {{"q", std::to_string(args.q)},
                                     {"n", std::to_string(args.n)},
                                     {"t", std::to_string(args.t)},
                                     {"i_max", std::to_string(i_max)},
                                     {"budget", std::to_string(args.budget)}});
    doc["q"] = stats.q;
    doc["n"] = stats.n;
    doc["t"] = stats.t;
    doc["enumeration"] = stats.enumeration;
    doc["budget"] = stats.budget;
    doc["seed"] = stats.seed;
    doc["per_i_error_given_error"] = stats.per_i_error_given_error;
    doc["per_i_error_given_correct"] = stats.per_i_error_given_correct;
    doc["trials_given_error"] = stats.trials_given_error;
    doc["errors_given_error"] = stats.errors_given_error;
    doc["trials_given_correct"] = stats.trials_given_correct;
    doc["errors_given_correct"] = stats.errors_given_correct;
    write_output(common, doc.dump(2) + "\n");
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"achievable information rate and density evolution toolkit for coded modulation"};
    app.require_subcommand(1);

    Common common;

    DmcArgs dmc_args;
    auto* dmc_cmd = app.add_subcommand("dmc", "hard-detection channel transition matrix");
    dmc_cmd->add_option("--mod", dmc_args.mod, "modulation")->capture_default_str();
    dmc_cmd->add_option("--snr", dmc_args.snr_db, "SNR in dB")->capture_default_str();
    dmc_cmd->add_option("--method", dmc_args.method, "analytic or mc")->capture_default_str();
    dmc_cmd->add_option("--samples", dmc_args.samples, "Monte Carlo samples")->capture_default_str();
    add_common(dmc_cmd, common);

    AirArgs air_args;
    auto* air_cmd = app.add_subcommand("air", "achievable information rate sweep");
    air_cmd->add_option("--mod", air_args.mod, "modulation")->capture_default_str();
    air_cmd->add_option("--snr", air_args.snr, "SNR grid start:stop:step in dB")->capture_default_str();
    air_cmd->add_option("--schemes", air_args.schemes, "comma list or 'all'")->capture_default_str();
    air_cmd->add_option("--method", air_args.method, "sdd_sw method: gh or mc")->capture_default_str();
    air_cmd->add_option("--gh-nodes", air_args.gh_nodes, "Gauss-Hermite nodes per axis")
        ->capture_default_str();
    air_cmd->add_option("--samples", air_args.samples, "Monte Carlo samples per point")
        ->capture_default_str();
    add_common(air_cmd, common);

    CodeArgs th_args;
    std::vector<double> th_bracket{1e-4, 0.2};
    auto* th_cmd = app.add_subcommand("threshold", "density evolution decoding threshold");
    th_cmd->add_option("--q", th_args.q, "field size")->capture_default_str();
    th_cmd->add_option("--n", th_args.n, "component code length")->capture_default_str();
    th_cmd->add_option("--t", th_args.t, "correction capability")->capture_default_str();
    th_cmd->add_option("--mode", th_args.mode, "miscorrection_aware or idealized")
        ->capture_default_str();
    th_cmd->add_option("--L", th_args.spatial_len, "spatial positions (1 = uncoupled)")
        ->capture_default_str();
    th_cmd->add_option("--w", th_args.coupling_w, "coupling width")->capture_default_str();
    th_cmd->add_option("--window", th_args.window, "window size in positions, or 'full'")
        ->capture_default_str();
    th_cmd->add_option("--iters", th_args.iters, "max iterations (per window if windowed)")
        ->capture_default_str();
    th_cmd->add_option("--tol", th_args.tol, "convergence tolerance")->capture_default_str();
    th_cmd->add_option("--target-ser", th_args.target_ser, "post-FEC symbol error target")
        ->capture_default_str();
    th_cmd->add_option("--bracket", th_bracket, "bisection bracket lo hi")
        ->delimiter(',')
        ->expected(2);
    th_cmd->add_option("--preset", th_args.preset, "named component-code preset");
    th_cmd->add_option("--presets-file", th_args.presets_file, "preset definitions file");
    add_common(th_cmd, common);

    CodeArgs trace_args;
    trace_args.spatial_len = 50;
    trace_args.coupling_w = 2;
    trace_args.window = "7";
    trace_args.iters = 4;
    double trace_p = 0.02;
    auto* trace_cmd = app.add_subcommand("de-trace", "per-iteration decoding wave trace");
    trace_cmd->add_option("--q", trace_args.q, "field size")->capture_default_str();
    trace_cmd->add_option("--n", trace_args.n, "component code length")->capture_default_str();
    trace_cmd->add_option("--t", trace_args.t, "correction capability")->capture_default_str();
    trace_cmd->add_option("--mode", trace_args.mode, "miscorrection_aware or idealized")
        ->capture_default_str();
    trace_cmd->add_option("--L", trace_args.spatial_len, "spatial positions")->capture_default_str();
    trace_cmd->add_option("--w", trace_args.coupling_w, "coupling width")->capture_default_str();
    trace_cmd->add_option("--window", trace_args.window, "window size in positions, or 'full'")
        ->capture_default_str();
    trace_cmd->add_option("--iters", trace_args.iters, "max iterations (per window if windowed)")
        ->capture_default_str();
    trace_cmd->add_option("--tol", trace_args.tol, "convergence tolerance")->capture_default_str();
    trace_cmd->add_option("--p", trace_p, "channel symbol error probability")->capture_default_str();
    trace_cmd->add_option("--preset", trace_args.preset, "named component-code preset");
    trace_cmd->add_option("--presets-file", trace_args.presets_file, "preset definitions file");
    add_common(trace_cmd, common);

    ReachArgs reach_args;
    auto* reach_cmd = app.add_subcommand("reach", "GN-model optical reach");
    reach_cmd->add_option("--mod", reach_args.mod, "modulation")->capture_default_str();
    reach_cmd->add_option("--scheme", reach_args.scheme, "detection/decoding scheme")
        ->capture_default_str();
    reach_cmd->add_option("--target-se", reach_args.target_se_pm,
                          "target spectral efficiency, bits/symbol over two polarizations")
        ->capture_default_str();
    reach_cmd->add_option("--channels", reach_args.channels, "WDM channel count (odd)")
        ->capture_default_str();
    reach_cmd->add_option("--spacing-ghz", reach_args.spacing_ghz, "channel spacing in GHz")
        ->capture_default_str();
    reach_cmd->add_option("--span-km", reach_args.span_km, "span length in km")->capture_default_str();
    reach_cmd->add_option("--nf-db", reach_args.nf_db, "EDFA noise figure in dB")
        ->capture_default_str();
    double nli_override = -1.0;
    auto* nli_opt = reach_cmd->add_option("--nli-coeff", nli_override,
                                          "per-span NLI coefficient override, 1/W^2");
    add_common(reach_cmd, common);

    OracleArgs oracle_args;
    auto* oracle_cmd = app.add_subcommand("oracle", "brute-force verification references");
    auto* bdd_cmd = oracle_cmd->add_subcommand("bdd-stats", "true-BDD decoding statistics");
    bdd_cmd->add_option("--q", oracle_args.q, "field size")->capture_default_str();
    bdd_cmd->add_option("--n", oracle_args.n, "code length")->capture_default_str();
    bdd_cmd->add_option("--t", oracle_args.t, "correction capability")->capture_default_str();
    bdd_cmd->add_option("--i-max", oracle_args.i_max, "largest other-error count (default n-1)");
    bdd_cmd->add_option("--budget", oracle_args.budget, "patterns per i before sampling kicks in")
        ->capture_default_str();
    add_common(bdd_cmd, common);
    oracle_cmd->require_subcommand(1);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints usage or help text
        return code == 0 ? 0 : 2;
    }

    try {
        if (*dmc_cmd) return run_dmc(dmc_args, common);
        if (*air_cmd) return run_air(air_args, common);
        if (*th_cmd) return run_threshold(th_args, {th_bracket[0], th_bracket[1]}, common);
        if (*trace_cmd) return run_de_trace(trace_args, trace_p, common);
        if (*reach_cmd) {
            if (*nli_opt) reach_args.nli_coeff = nli_override;
            return run_reach(reach_args, common);
        }
        if (*bdd_cmd) return run_oracle_bdd(oracle_args, common);
        std::cerr << "error: no subcommand\n";
        return 2;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace cmair::cli
