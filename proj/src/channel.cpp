#include "cmair/channel.hpp"

#include <vector>

#include "cmair/errors.hpp"

namespace cmair {

namespace {

void check_square_qam(const Constellation& c) {
    if (c.order < 4 || c.axis_size() * c.axis_size() != c.order)
        throw config_error("constellation is not a square QAM; decision regions do not factor");
}

double finish_stats(const Constellation& c, DmcModel& dmc) {
    const int m = c.order;
    double diag = 0.0;
    for (int k = 0; k < m; ++k) diag += dmc.transition(k, k);
    dmc.delta = 1.0 - diag / m;
    dmc.eps_levels = eps_levels_from_transition(c, dmc.transition);
    dmc.eps_bar = dmc.eps_levels.mean();
    return dmc.delta;
}

}  // namespace

Eigen::MatrixXd pam_axis_transition(const Constellation& c, double sigma) {
    const int ma = c.axis_size();
    Eigen::MatrixXd p(ma, ma);
    for (int u = 0; u < ma; ++u) {
        const double a = c.axis_level(u);
        for (int v = 0; v < ma; ++v) {
            // Decision interval of level v is bounded by the midpoints.
            const double hi =
                (v == ma - 1) ? 1.0 : normal_cdf(((c.axis_level(v) + c.axis_level(v + 1)) / 2 - a) / sigma);
            const double lo =
                (v == 0) ? 0.0 : normal_cdf(((c.axis_level(v - 1) + c.axis_level(v)) / 2 - a) / sigma);
            p(u, v) = hi - lo;
        }
    }
    return p;
}

DmcModel hard_dmc_analytic(const Constellation& c, double snr_db) {
    check_square_qam(c);
    const double sigma = noise_sigma(snr_db);
    const Eigen::MatrixXd axis = pam_axis_transition(c, sigma);
    const int ma = c.axis_size();
    DmcModel dmc;
    dmc.order = c.order;
    dmc.snr_db = snr_db;
    dmc.method = "analytic";
    dmc.transition.resize(c.order, c.order);
    for (int ui = 0; ui < ma; ++ui)
        for (int uq = 0; uq < ma; ++uq)
            for (int vi = 0; vi < ma; ++vi)
                for (int vq = 0; vq < ma; ++vq)
                    dmc.transition(ui * ma + uq, vi * ma + vq) = axis(ui, vi) * axis(uq, vq);
    finish_stats(c, dmc);
    return dmc;
}

int detect_axis_level(const Constellation& c, double y_axis) {
    const int ma = c.axis_size();
    // Index of the first level whose upper midpoint boundary is >= y; a value
    // exactly on a boundary therefore maps to the lower index.
    const double u = y_axis / c.axis_step() + (ma - 1) / 2.0;
    int idx = static_cast<int>(std::ceil(u - 0.5));
    if (idx < 0) idx = 0;
    if (idx > ma - 1) idx = ma - 1;
    return idx;
}

DmcModel hard_dmc_montecarlo(const Constellation& c, double snr_db, std::uint64_t samples,
                             std::uint64_t seed, int workers) {
    check_square_qam(c);
    if (samples == 0) throw config_error("monte carlo sample count must be >= 1");
    const double sigma = noise_sigma(snr_db);
    const int m = c.order;
    const int ma = c.axis_size();

    // Fixed chunking: the substream layout depends on `samples` only.
    const std::uint64_t chunk_size = 1u << 20;
    const std::int64_t n_chunks = static_cast<std::int64_t>((samples + chunk_size - 1) / chunk_size);
    std::vector<Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>> counts(
        n_chunks, Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, m));

    run_chunks(n_chunks, workers, [&](std::int64_t chunk) {
        SplitMix rng(derive_seed(seed, static_cast<std::uint64_t>(chunk)));
        const std::uint64_t begin = static_cast<std::uint64_t>(chunk) * chunk_size;
        const std::uint64_t end = std::min(samples, begin + chunk_size);
        auto& tally = counts[chunk];
        for (std::uint64_t s = begin; s < end; ++s) {
            const int k = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
            const auto [ni, nq] = rng.next_gaussian_pair();
            const int ui = k / ma, uq = k % ma;
            const int vi = detect_axis_level(c, c.axis_level(ui) + sigma * ni);
            const int vq = detect_axis_level(c, c.axis_level(uq) + sigma * nq);
            tally(k, vi * ma + vq) += 1;
        }
    });

    Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> total =
        Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>::Zero(m, m);
    for (const auto& tally : counts) total += tally;

    DmcModel dmc;
    dmc.order = m;
    dmc.snr_db = snr_db;
    dmc.method = "monte_carlo";
    dmc.samples = samples;
    dmc.seed = seed;
    dmc.transition.resize(m, m);
    for (int k = 0; k < m; ++k) {
        const std::int64_t row = total.row(k).sum();
        for (int j = 0; j < m; ++j)
            dmc.transition(k, j) = row == 0 ? (k == j ? 1.0 : 0.0)
                                            : static_cast<double>(total(k, j)) / static_cast<double>(row);
    }
    finish_stats(c, dmc);
    return dmc;
}

DmcModel qsc_model(int q, double p) {
    if (q < 2) throw config_error("QSC alphabet size must be >= 2");
    const double pmax = static_cast<double>(q - 1) / q;
    if (p < 0.0 || p > pmax)
        throw config_error("QSC error probability out of range [0, (q-1)/q]");
    DmcModel dmc;
    dmc.order = q;
    dmc.method = "qsc";
    dmc.delta = p;
    dmc.transition = Eigen::MatrixXd::Constant(q, q, q > 1 ? p / (q - 1) : 0.0);
    dmc.transition.diagonal().setConstant(1.0 - p);
    if (q == 4 || q == 16 || q == 64 || q == 256) {
        const Constellation c = build_square_qam(q);
        dmc.eps_levels = eps_levels_from_transition(c, dmc.transition);
        dmc.eps_bar = dmc.eps_levels.mean();
    }
    return dmc;
}

Eigen::VectorXd eps_levels_from_transition(const Constellation& c, const Eigen::MatrixXd& transition) {
    const int m = c.order;
    Eigen::VectorXd eps = Eigen::VectorXd::Zero(c.bits_per_symbol);
    for (int level = 0; level < c.bits_per_symbol; ++level) {
        double e = 0.0;
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j)
                if (bit_of_label(c, k, level) != bit_of_label(c, j, level)) e += transition(k, j);
        eps[level] = e / m;
    }
    return eps;
}

Eigen::VectorXd eps_levels_from_pam_integrals(const Constellation& c, double snr_db) {
    const double sigma = noise_sigma(snr_db);
    const int ma = c.axis_size();
    const int half_bits = c.bits_per_axis();
    // Axis levels and midpoint boundaries, integrated bit by bit.
    Eigen::VectorXd axis_eps = Eigen::VectorXd::Zero(half_bits);
    for (int b = 0; b < half_bits; ++b) {
        double e = 0.0;
        for (int u = 0; u < ma; ++u) {
            const int tx_bit = (gray_code(u) >> (half_bits - 1 - b)) & 1u;
            for (int v = 0; v < ma; ++v) {
                if (static_cast<int>((gray_code(v) >> (half_bits - 1 - b)) & 1u) == tx_bit) continue;
                const double a = c.axis_level(u);
                const double hi = (v == ma - 1)
                                      ? 1.0
                                      : normal_cdf(((c.axis_level(v) + c.axis_level(v + 1)) / 2 - a) / sigma);
                const double lo = (v == 0)
                                      ? 0.0
                                      : normal_cdf(((c.axis_level(v - 1) + c.axis_level(v)) / 2 - a) / sigma);
                e += hi - lo;
            }
        }
        axis_eps[b] = e / ma;
    }
    Eigen::VectorXd eps(c.bits_per_symbol);
    eps.head(half_bits) = axis_eps;  // I-axis bits first
    eps.tail(half_bits) = axis_eps;
    return eps;
}

}  // namespace cmair
