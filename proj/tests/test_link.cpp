#include <doctest.h>

#include <cmath>

#include "cmair/errors.hpp"
#include "cmair/link.hpp"

using namespace cmair;

TEST_CASE("ASE per span matches the hand calculation for the default link") {
    const LinkModel link;
    // NF 4.5 dB, 80 km at 0.2 dB/km, 1550 nm, 32 GBaud:
    // 10^0.45 * h * (c/lambda) * (10^1.6 - 1) * 32e9
    CHECK(ase_power_per_span_w(link) == doctest::Approx(4.485869954510627e-07).epsilon(1e-12));
}

TEST_CASE("linear regime loses exactly 3.01 dB per distance doubling") {
    LinkModel link;
    link.nli_coefficient = 0.0;
    const double p = 0.0;  // dBm
    for (int n : {1, 2, 4, 8, 16}) {
        const double snr1 = snr_at_distance_db(link, n, p);
        const double snr2 = snr_at_distance_db(link, 2 * n, p);
        CHECK(std::abs((snr1 - snr2) - 10.0 * std::log10(2.0)) < 0.01);
    }
}

TEST_CASE("at the optimal launch power the NLI carries half the ASE power") {
    const LinkModel link;
    for (int n : {1, 5, 20}) {
        const LaunchOptimum opt = optimize_launch_power(link, n);
        CHECK_FALSE(opt.clipped);
        const double p = 1e-3 * std::pow(10.0, opt.power_dbm / 10.0);
        const double ase = n * ase_power_per_span_w(link);
        const double nli = n * nli_coefficient_per_span(link) * p * p * p;
        CHECK(nli == doctest::Approx(ase / 2.0).epsilon(1e-9));
    }
}

TEST_CASE("closed-form optimum agrees with the golden-section scan to 0.01 dB") {
    LinkModel link;
    for (int n : {1, 10}) {
        const LaunchOptimum closed = optimize_launch_power(link, n);
        const LaunchOptimum scanned = optimize_launch_power_scan(link, n);
        CHECK(std::abs(closed.power_dbm - scanned.power_dbm) < 0.01);
        CHECK(std::abs(closed.snr_db - scanned.snr_db) < 0.001);
    }
    // an override flows through both paths
    link.nli_coefficient = 500.0;
    const LaunchOptimum closed = optimize_launch_power(link, 3);
    const LaunchOptimum scanned = optimize_launch_power_scan(link, 3);
    CHECK(std::abs(closed.power_dbm - scanned.power_dbm) < 0.01);
}

TEST_CASE("zero NLI pushes the optimum to the configured maximum with a flag") {
    LinkModel link;
    link.nli_coefficient = 0.0;
    const LaunchOptimum opt = optimize_launch_power(link, 4);
    CHECK(opt.clipped);
    CHECK(opt.power_dbm == doctest::Approx(link.max_launch_dbm));
}

TEST_CASE("optimized SNR decreases monotonically with span count") {
    const LinkModel link;
    double prev = 1e9;
    for (int n = 1; n <= 40; ++n) {
        const double snr = optimize_launch_power(link, n).snr_db;
        CHECK(snr < prev);
        prev = snr;
    }
}

TEST_CASE("reach orderings follow the AIR orderings") {
    const LinkModel link;
    // SDD reach runs quadrature inside the bisection; 16-QAM keeps it quick
    {
        const Constellation c = build_square_qam(16);
        const ReachResult hdd_sw = reach(link, c, Scheme::hdd_sw, 3.0);
        const ReachResult hdchad_sw = reach(link, c, Scheme::hdchad_sw, 3.0);
        const ReachResult sdd = reach(link, c, Scheme::sdd_sw, 3.0);
        const ReachResult hdd_bw = reach(link, c, Scheme::hdd_bw, 3.0);
        const ReachResult hdchad_bw = reach(link, c, Scheme::hdchad_bw, 3.0);
        CHECK(hdd_sw.spans <= hdchad_sw.spans);
        CHECK(hdchad_sw.spans <= sdd.spans);
        CHECK(hdd_bw.spans <= hdchad_bw.spans);
        CHECK(hdchad_bw.spans <= sdd.spans);
        CHECK(hdd_bw.spans >= hdd_sw.spans);
    }
    for (int order : {64, 256}) {
        const Constellation c = build_square_qam(order);
        const double target = 0.75 * c.bits_per_symbol / 2.0 + c.bits_per_symbol / 4.0;
        const ReachResult hdd_sw = reach(link, c, Scheme::hdd_sw, target);
        const ReachResult hdchad_sw = reach(link, c, Scheme::hdchad_sw, target);
        const ReachResult hdd_bw = reach(link, c, Scheme::hdd_bw, target);
        const ReachResult hdchad_bw = reach(link, c, Scheme::hdchad_bw, target);
        CHECK(hdd_sw.spans <= hdchad_sw.spans);
        CHECK(hdd_bw.spans <= hdchad_bw.spans);
        CHECK(hdd_bw.spans >= hdd_sw.spans);
    }
}

TEST_CASE("reach is monotone non-increasing in the target rate") {
    const LinkModel link;
    const Constellation c = build_square_qam(64);
    int prev = 1 << 30;
    for (double target : {2.0, 3.0, 4.0, 5.0}) {
        const ReachResult res = reach(link, c, Scheme::hdd_bw, target);
        CHECK(res.spans <= prev);
        prev = res.spans;
    }
}

TEST_CASE("reach rejects unreachable or degenerate targets") {
    const LinkModel link;
    const Constellation c = build_square_qam(16);
    CHECK_THROWS_AS(reach(link, c, Scheme::hdd_bw, 4.0), config_error);  // target = m
    CHECK_THROWS_AS(reach(link, c, Scheme::hdd_bw, 0.0), config_error);
    // a brutal NLI override makes even one span fall short of 3 bits
    LinkModel harsh;
    harsh.nli_coefficient = 1e9;
    CHECK_THROWS_AS(reach(harsh, c, Scheme::hdd_bw, 3.0), config_error);
}

TEST_CASE("link validation") {
    LinkModel link;
    link.channel_count = 80;
    CHECK_THROWS_AS(validate(link), config_error);
    link = LinkModel{};
    link.span_length_km = 0.0;
    CHECK_THROWS_AS(validate(link), config_error);
    link = LinkModel{};
    CHECK_THROWS_AS(snr_at_distance_db(link, 0, 0.0), config_error);
}
