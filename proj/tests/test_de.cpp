#include <doctest.h>

#include <cmath>

#include "cmair/de.hpp"
#include "cmair/errors.hpp"
#include "cmair/math_util.hpp"
#include "cmair/oracles.hpp"

using namespace cmair;

TEST_CASE("GF(8) n=7 t=1 weight distribution matches exhaustive enumeration") {
    const ComponentCodeSpec spec(8, 7, 1);
    CHECK(rs_weight_distribution(spec, 0) == 1.0);
    CHECK(rs_weight_distribution(spec, 1) == 0.0);
    CHECK(rs_weight_distribution(spec, 2) == 0.0);
    CHECK(rs_weight_distribution(spec, 3) == 245.0);
    CHECK(rs_weight_distribution(spec, 4) == 1225.0);
    CHECK(rs_weight_distribution(spec, 5) == 5586.0);
    CHECK(rs_weight_distribution(spec, 6) == 12838.0);
    CHECK(rs_weight_distribution(spec, 7) == 12873.0);
    CHECK_THROWS_AS(rs_weight_distribution(spec, 8), config_error);
    CHECK_THROWS_AS(rs_weight_distribution(spec, -1), config_error);
}

TEST_CASE("weight distributions sum to q^k, including shortened codes") {
    for (const auto& [q, n, t] : std::vector<std::tuple<int, int, int>>{
             {8, 7, 1}, {16, 15, 2}, {16, 10, 2}, {16, 15, 3}, {64, 20, 2}}) {
        const ComponentCodeSpec spec(q, n, t);
        double total = 0.0;
        for (int alpha = 0; alpha <= n; ++alpha) total += rs_weight_distribution(spec, alpha);
        CHECK(total == doctest::Approx(std::pow(static_cast<double>(q), n - 2 * t)).epsilon(1e-12));
    }
}

TEST_CASE("minimum-distance zeros hold at n=255 for t in {2,3,4}") {
    for (int t : {2, 3, 4}) {
        const ComponentCodeSpec spec(256, 255, t);
        CHECK(rs_weight_distribution(spec, 0) == 1.0);
        for (int alpha = 1; alpha <= 2 * t; ++alpha)
            CHECK(rs_weight_distribution(spec, alpha) == 0.0);
        CHECK(rs_weight_distribution(spec, 2 * t + 1) > 0.0);
        CHECK(spec.max_clamp_excess() <= 1e-12);
    }
}

TEST_CASE("p_n and p_bar_n zero branches and exact small-code values") {
    const ComponentCodeSpec spec(8, 7, 1);
    CHECK(p_n(spec, 0) == 0.0);               // i <= t-1
    CHECK(p_bar_n(spec, 0) == 0.0);           // i <= t
    CHECK(p_bar_n(spec, 1) == 0.0);
    CHECK(p_n(spec, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p_n(spec, 2) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p_n(spec, 3) == doctest::Approx(48.0 / 49.0).epsilon(1e-13));
    CHECK(p_bar_n(spec, 2) == doctest::Approx(1.0 / 7.0).epsilon(1e-13));
    CHECK_THROWS_AS(p_n(spec, 7), config_error);
    CHECK_THROWS_AS(p_bar_n(spec, -1), config_error);
}

TEST_CASE("GF(8) n=7 t=1: formulas match the exhaustive BDD oracle to 1e-12") {
    const ComponentCodeSpec spec(8, 7, 1);
    const BddStats oracle = enumerate_bdd_stats(8, 7, 1, 6, 1000000, 1);
    REQUIRE(oracle.enumeration == "exhaustive");
    for (int i = 0; i <= 6; ++i) {
        CHECK(std::abs(p_n(spec, i) - oracle.per_i_error_given_error[i]) <= 1e-12);
        CHECK(std::abs(p_bar_n(spec, i) - oracle.per_i_error_given_correct[i]) <= 1e-12);
    }
}

TEST_CASE("GF(16) n=15 t=2: formulas match the sampled oracle within 4 standard errors") {
    const ComponentCodeSpec spec(16, 15, 2);
    const std::uint64_t budget = 100000;
    const BddStats oracle = enumerate_bdd_stats(16, 15, 2, 14, budget, 3, 4);
    for (int i = 0; i <= 14; ++i) {
        for (int variant = 0; variant < 2; ++variant) {
            const double formula = variant == 0 ? p_n(spec, i) : p_bar_n(spec, i);
            const double observed = variant == 0 ? oracle.per_i_error_given_error[i]
                                                 : oracle.per_i_error_given_correct[i];
            const std::uint64_t trials =
                variant == 0 ? oracle.trials_given_error[i] : oracle.trials_given_correct[i];
            const double se = std::sqrt(formula * (1.0 - formula) / trials);
            CHECK(std::abs(formula - observed) <= 4.0 * se + 1e-12);
        }
    }
}

TEST_CASE("f_update edges") {
    const ComponentCodeSpec spec(8, 7, 1);
    CHECK(f_update(spec, 0.0, 0.7, BddModel::miscorrection_aware) == 0.0);
    CHECK(f_update(spec, 0.0, 0.7, BddModel::idealized) == 0.0);
    CHECK(f_update(spec, 1.0, 1.0, BddModel::idealized) == 1.0);
    CHECK_THROWS_AS(f_update(spec, -0.1, 0.5, BddModel::idealized), config_error);
    CHECK_THROWS_AS(f_update(spec, 0.5, 1.2, BddModel::idealized), config_error);
}

TEST_CASE("idealized f_update is monotone in x and p_s") {
    const ComponentCodeSpec spec(16, 15, 2);
    for (double p : {0.05, 0.3, 0.8}) {
        double prev = -1.0;
        for (double x = 0.0; x <= 1.0; x += 0.02) {
            const double v = f_update(spec, x, p, BddModel::idealized);
            CHECK(v >= prev - 1e-15);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
    for (double x : {0.05, 0.3, 0.8}) {
        double prev = -1.0;
        for (double p = 0.0; p <= 1.0; p += 0.02) {
            const double v = f_update(spec, x, p, BddModel::idealized);
            CHECK(v >= prev - 1e-15);
            prev = v;
        }
    }
}

TEST_CASE("one miscorrection-aware update matches a direct BDD round simulation") {
    const ComponentCodeSpec spec(8, 7, 1);
    const RsCode code(8, 7, 1);
    const auto set = code.codeword_set();
    const double x = 0.25, p_s = 0.15;
    const double predicted = f_update(spec, x, p_s, BddModel::miscorrection_aware);

    SplitMix rng(31);
    const std::uint64_t trials = 400000;
    std::uint64_t wrong = 0;
    Word pattern(7);
    for (std::uint64_t s = 0; s < trials; ++s) {
        pattern[0] = rng.next_unit() <= p_s ? static_cast<std::uint8_t>(1 + rng.next_below(7)) : 0;
        for (int pos = 1; pos < 7; ++pos)
            pattern[pos] =
                rng.next_unit() <= x ? static_cast<std::uint8_t>(1 + rng.next_below(7)) : 0;
        const auto decoded = code.decode_bdd_ball(pattern, &set);
        const bool err = decoded ? (*decoded)[0] != 0 : pattern[0] != 0;
        wrong += err;
    }
    const double observed = static_cast<double>(wrong) / trials;
    const double se = std::sqrt(predicted * (1.0 - predicted) / trials);
    CHECK(std::abs(observed - predicted) < 4.0 * se);
}

TEST_CASE("f_update stays inside [0,1] in both modes and clamping never fires") {
    for (const auto& [q, n, t] : std::vector<std::tuple<int, int, int>>{{8, 7, 1}, {16, 15, 2}}) {
        const ComponentCodeSpec spec(q, n, t);
        CHECK(spec.max_clamp_excess() <= 1e-12);
        for (double x = 0.0; x <= 1.0; x += 0.05) {
            for (double p : {0.0, 0.2, 0.7, 1.0}) {
                for (BddModel mode : {BddModel::miscorrection_aware, BddModel::idealized}) {
                    const double v = f_update(spec, x, p, mode);
                    CHECK(v >= 0.0);
                    CHECK(v <= 1.0);
                }
            }
        }
    }
}

TEST_CASE("below threshold the iterates decrease monotonically from p_s") {
    const ComponentCodeSpec spec(16, 15, 2);
    DeConfig config;
    config.max_iters = 20000;
    const double p_star = threshold(spec, config, 0.01, 0.5, BddModel::idealized).p_star;
    const double p = 0.5 * p_star;
    double x = p;
    for (int it = 0; it < 200; ++it) {
        const double next = f_update(spec, x, p, BddModel::idealized);
        CHECK(next <= x + 1e-15);
        x = next;
    }
    CHECK(x < 1e-12);
}

TEST_CASE("uncoupled DE: instant convergence at p=0, fixed points elsewhere") {
    const ComponentCodeSpec spec(16, 15, 2);
    DeConfig config;
    config.max_iters = 20000;

    const GldpcResult zero = de_gldpc(spec, 0.0, config, BddModel::idealized);
    CHECK(zero.final_x == 0.0);
    CHECK(zero.iterations == 1);
    CHECK(zero.converged);

    const ThresholdResult th = threshold(spec, config, 0.01, 0.5, BddModel::idealized);
    CHECK(th.p_star > 0.01);
    CHECK(th.p_star < 0.5);

    const GldpcResult below = de_gldpc(spec, 0.5 * th.p_star, config, BddModel::idealized);
    CHECK(below.final_x < 1e-12);

    // half-error channel with a weak code: stuck at a large fixed point
    const ComponentCodeSpec weak(8, 7, 1);
    const GldpcResult stuck = de_gldpc(weak, 0.5, config, BddModel::idealized);
    CHECK(stuck.final_x > 0.1);
}

TEST_CASE("spatially coupled DE with L=w=1 reproduces the scalar recursion") {
    const ComponentCodeSpec spec(16, 15, 2);
    DeConfig config;
    config.max_iters = 500;
    const GldpcResult scalar = de_gldpc(spec, 0.21, config, BddModel::idealized);
    DeConfig sc_config = config;
    sc_config.spatial_len = 1;
    sc_config.coupling_w = 1;
    const DeState sc = de_scgldpc(spec, 0.21, sc_config, BddModel::idealized);
    CHECK(sc.x[0] == scalar.final_x);
    CHECK(sc.iterations == scalar.iterations);
}

TEST_CASE("coupled DE: zero channel stays zero and the wave leads at the boundary") {
    const ComponentCodeSpec spec(16, 15, 2);
    DeConfig config;
    config.spatial_len = 30;
    config.coupling_w = 2;
    config.max_iters = 300;

    const DeState zero = de_scgldpc(spec, 0.0, config, BddModel::idealized);
    CHECK(zero.x.maxCoeff() == 0.0);

    bool wave_ok = true;
    run_de(spec, 0.24, config, BddModel::idealized, [&](int, const Eigen::VectorXd& x) {
        if (x[0] > x[x.size() / 2] + 1e-15) wave_ok = false;
    });
    CHECK(wave_ok);
}

TEST_CASE("window DE with W=L reproduces full DE bit for bit") {
    const ComponentCodeSpec spec(16, 15, 2);
    DeConfig full;
    full.spatial_len = 20;
    full.coupling_w = 2;
    full.max_iters = 80;
    const DeState a = de_scgldpc(spec, 0.22, full, BddModel::miscorrection_aware);
    DeConfig windowed = full;
    windowed.window = 20;
    const DeState b = de_window(spec, 0.22, windowed, BddModel::miscorrection_aware);
    REQUIRE(a.x.size() == b.x.size());
    for (Eigen::Index i = 0; i < a.x.size(); ++i) CHECK(a.x[i] == b.x[i]);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("window DE produces a valid state on the staircase-style setup") {
    const ComponentCodeSpec spec(16, 15, 2);
    DeConfig config;
    config.spatial_len = 30;
    config.coupling_w = 2;
    config.window = 7;
    config.max_iters = 4;
    const DeState state = de_window(spec, 0.15, config, BddModel::miscorrection_aware);
    CHECK(state.x.minCoeff() >= 0.0);
    CHECK(state.x.maxCoeff() <= 1.0);

    const DeState zero = de_window(spec, 0.0, config, BddModel::miscorrection_aware);
    CHECK(zero.x.maxCoeff() == 0.0);
}

TEST_CASE("threshold bracket validation") {
    const ComponentCodeSpec spec(16, 15, 2);
    DeConfig config;
    config.max_iters = 2000;
    CHECK_THROWS_AS(threshold(spec, config, 0.2, 0.2, BddModel::idealized), config_error);
    CHECK_THROWS_AS(threshold(spec, config, 0.3, 0.1, BddModel::idealized), config_error);
    // lower end already above threshold -> invalid bracket
    CHECK_THROWS_AS(threshold(spec, config, 0.4, 0.9, BddModel::idealized), config_error);
    // upper end still below threshold -> invalid bracket
    CHECK_THROWS_AS(threshold(spec, config, 1e-4, 1e-3, BddModel::idealized), config_error);
}

TEST_CASE("thresholds increase with t at fixed (q, n)") {
    DeConfig config;
    config.max_iters = 20000;
    double prev = 0.0;
    for (int t : {1, 2, 3}) {
        const ComponentCodeSpec spec(16, 15, t);
        const ThresholdResult th = threshold(spec, config, 1e-4, 0.9, BddModel::idealized);
        CHECK(th.p_star > prev);
        prev = th.p_star;
    }
}

TEST_CASE("config validation") {
    DeConfig bad;
    bad.coupling_w = 0;
    CHECK_THROWS_AS(validate(bad), config_error);
    bad = DeConfig{};
    bad.spatial_len = 1;
    bad.coupling_w = 2;
    CHECK_THROWS_AS(validate(bad), config_error);
    bad = DeConfig{};
    bad.window = 5;
    bad.spatial_len = 3;
    CHECK_THROWS_AS(validate(bad), config_error);
    bad = DeConfig{};
    bad.max_iters = 0;
    CHECK_THROWS_AS(validate(bad), config_error);
}
