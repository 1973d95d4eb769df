#include "cmair/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "cmair/channel.hpp"
#include "cmair/errors.hpp"
#include "cmair/math_util.hpp"

namespace cmair {

namespace {

double pattern_count(int n_other, int i, int q, bool designated_in_error) {
    double c = designated_in_error ? (q - 1) : 1.0;
    for (int j = 0; j < i; ++j) c *= static_cast<double>(n_other - j) / (j + 1) * (q - 1);
    return c;
}

struct Tally {
    std::uint64_t trials = 0;
    std::uint64_t errors = 0;
};

// One BDD round on the error pattern itself; linearity makes the all-zero
// codeword transmission lossless. On decoding failure the word is passed
// through unchanged, matching iterative BDD practice.
template <typename Decode>
bool designated_wrong_after_bdd(const Word& pattern, const Decode& decode) {
    const auto decoded = decode(pattern);
    return decoded ? (*decoded)[0] != 0 : pattern[0] != 0;
}

}  // namespace

BddStats enumerate_bdd_stats(int q, int n, int t, int i_max, std::uint64_t budget,
                             std::uint64_t seed, int workers) {
    if (q > 16 || n > 15)
        throw config_error("BDD oracle is limited to q <= 16, n <= 15 for tractability");
    if (i_max < 0 || i_max > n - 1) throw config_error("i_max must lie in [0, n-1]");
    if (budget == 0) throw config_error("pattern budget must be >= 1");

    const RsCode code(q, n, t);
    // k <= 5: membership set + ball search (fully independent of algebraic
    // decoding); larger k: Berlekamp-Massey route.
    std::unique_ptr<std::unordered_set<std::uint64_t>> set;
    if (code.k() <= 5) set = std::make_unique<std::unordered_set<std::uint64_t>>(code.codeword_set());
    auto decode = [&](const Word& w) {
        return set ? code.decode_bdd_ball(w, set.get()) : code.decode_bdd_algebraic(w);
    };

    BddStats stats;
    stats.q = q;
    stats.n = n;
    stats.t = t;
    stats.budget = budget;
    stats.seed = seed;
    const int cases = i_max + 1;
    stats.per_i_error_given_error.assign(cases, 0.0);
    stats.per_i_error_given_correct.assign(cases, 0.0);
    stats.trials_given_error.assign(cases, 0);
    stats.errors_given_error.assign(cases, 0);
    stats.trials_given_correct.assign(cases, 0);
    stats.errors_given_correct.assign(cases, 0);

    bool all_exhaustive = true;

    // designated position is index 0; i other errors live in positions 1..n-1
    for (int variant = 0; variant < 2; ++variant) {
        const bool designated_in_error = variant == 0;
        auto& trials = designated_in_error ? stats.trials_given_error : stats.trials_given_correct;
        auto& errors = designated_in_error ? stats.errors_given_error : stats.errors_given_correct;

        for (int i = 0; i <= i_max; ++i) {
            const double count = pattern_count(n - 1, i, q, designated_in_error);
            if (count <= static_cast<double>(budget)) {
                // exhaustive: combinations of positions x odometer over values
                std::uint64_t trial_count = 0, error_count = 0;
                std::vector<int> pos(i);
                for (int x = 0; x < i; ++x) pos[x] = 1 + x;
                Word pattern(n, 0);
                const int dvals = designated_in_error ? q - 1 : 1;
                for (;;) {
                    std::vector<int> val(i, 1);
                    for (;;) {
                        std::fill(pattern.begin(), pattern.end(), 0);
                        for (int x = 0; x < i; ++x) pattern[pos[x]] = static_cast<std::uint8_t>(val[x]);
                        for (int dv = 1; dv <= dvals; ++dv) {
                            pattern[0] = designated_in_error ? static_cast<std::uint8_t>(dv) : 0;
                            ++trial_count;
                            if (designated_wrong_after_bdd(pattern, decode)) ++error_count;
                        }
                        int d = i - 1;
                        while (d >= 0 && ++val[d] == q) val[d--] = 1;
                        if (d < 0) break;
                    }
                    if (i == 0) break;
                    int d = i - 1;
                    while (d >= 0 && pos[d] == n - i + d) --d;
                    if (d < 0) break;
                    ++pos[d];
                    for (int x = d + 1; x < i; ++x) pos[x] = pos[x - 1] + 1;
                }
                trials[i] = trial_count;
                errors[i] = error_count;
            } else {
                all_exhaustive = false;
                // sampled: fixed chunking over the trial budget
                const std::uint64_t chunk_size = 1u << 16;
                const std::int64_t n_chunks =
                    static_cast<std::int64_t>((budget + chunk_size - 1) / chunk_size);
                std::vector<std::uint64_t> chunk_errors(n_chunks, 0);
                run_chunks(n_chunks, workers, [&](std::int64_t chunk) {
                    SplitMix rng(derive_seed(seed, (static_cast<std::uint64_t>(variant) << 40) ^
                                                       (static_cast<std::uint64_t>(i) << 32) ^
                                                       static_cast<std::uint64_t>(chunk)));
                    const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * chunk_size;
                    const std::uint64_t end = std::min(budget, begin + chunk_size);
                    Word pattern(n, 0);
                    std::vector<int> avail(n - 1);
                    std::uint64_t local = 0;
                    for (std::uint64_t s = begin; s < end; ++s) {
                        std::fill(pattern.begin(), pattern.end(), 0);
                        if (designated_in_error)
                            pattern[0] = static_cast<std::uint8_t>(1 + rng.next_below(q - 1));
                        for (int x = 0; x < n - 1; ++x) avail[x] = 1 + x;
                        // partial Fisher-Yates for i distinct positions
                        for (int x = 0; x < i; ++x) {
                            const int pick =
                                x + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n - 1 - x)));
                            std::swap(avail[x], avail[pick]);
                            pattern[avail[x]] = static_cast<std::uint8_t>(1 + rng.next_below(q - 1));
                        }
                        if (designated_wrong_after_bdd(pattern, decode)) ++local;
                    }
                    chunk_errors[chunk] = local;
                });
                trials[i] = budget;
                errors[i] = 0;
                for (const auto e : chunk_errors) errors[i] += e;
            }
        }
    }
    for (int i = 0; i <= i_max; ++i) {
        stats.per_i_error_given_error[i] =
            static_cast<double>(stats.errors_given_error[i]) / stats.trials_given_error[i];
        stats.per_i_error_given_correct[i] =
            static_cast<double>(stats.errors_given_correct[i]) / stats.trials_given_correct[i];
    }
    stats.enumeration = all_exhaustive ? "exhaustive" : "sampled";
    return stats;
}

MiEstimate mc_mutual_information(const Constellation& c, double snr_db, std::uint64_t samples,
                                 std::uint64_t seed, int workers) {
    if (samples < 10000) throw config_error("Monte Carlo MI needs at least 10^4 samples");
    const int m = c.order;
    const double sigma = noise_sigma(snr_db);
    const double inv_two_var = 1.0 / (2.0 * sigma * sigma);

    // exponent tables; e_j(z) = e0 - er*zr - ei*zi with z the noise
    Eigen::MatrixXd e0(m, m), er(m, m), ei(m, m);
    for (int k = 0; k < m; ++k)
        for (int j = 0; j < m; ++j) {
            const std::complex<double> d = c.points[k] - c.points[j];
            e0(k, j) = -std::norm(d) * inv_two_var;
            er(k, j) = -d.real() / (sigma * sigma);
            ei(k, j) = -d.imag() / (sigma * sigma);
        }

    const std::uint64_t chunk_size = 1u << 18;
    const std::int64_t n_chunks = static_cast<std::int64_t>((samples + chunk_size - 1) / chunk_size);
    struct Acc {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::vector<Acc> acc(n_chunks);

    const double log2m = std::log2(static_cast<double>(m));
    run_chunks(n_chunks, workers, [&](std::int64_t chunk) {
        SplitMix rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
        const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * chunk_size;
        const std::uint64_t end = std::min(samples, begin + chunk_size);
        Eigen::ArrayXd expo(m);
        Acc local;
        for (std::uint64_t s = begin; s < end; ++s) {
            const int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
            const auto [nr, ni] = rng.next_gaussian_pair();
            const double zr = sigma * nr, zi = sigma * ni;
            expo = e0.row(k).transpose().array() + zr * er.row(k).transpose().array() +
                   zi * ei.row(k).transpose().array();
            const double peak = expo.maxCoeff();
            const double lse = peak + std::log((expo - peak).exp().sum());
            const double v = log2m - lse / kLn2;
            local.sum += v;
            local.sum_sq += v * v;
        }
        acc[chunk] = local;
    });

    double sum = 0.0, sum_sq = 0.0;
    for (const auto& a : acc) {
        sum += a.sum;
        sum_sq += a.sum_sq;
    }
    const double nd = static_cast<double>(samples);
    const double mean = sum / nd;
    const double var = std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0));
    MiEstimate est;
    est.rate = mean;
    est.std_err = std::sqrt(var / nd);
    est.samples = samples;
    return est;
}

}  // namespace cmair
