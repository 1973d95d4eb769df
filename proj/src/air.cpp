#include "cmair/air.hpp"

#include <algorithm>
#include <cmath>

#include "cmair/errors.hpp"
#include "cmair/oracles.hpp"

namespace cmair {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::sdd_sw: return "sdd_sw";
        case Scheme::hdchad_sw: return "hdchad_sw";
        case Scheme::hdd_sw: return "hdd_sw";
        case Scheme::hdchad_bw: return "hdchad_bw";
        case Scheme::hdd_bw: return "hdd_bw";
    }
    return "?";
}

Scheme parse_scheme(const std::string& name) {
    for (Scheme s : {Scheme::sdd_sw, Scheme::hdchad_sw, Scheme::hdd_sw, Scheme::hdchad_bw,
                     Scheme::hdd_bw})
        if (name == scheme_name(s)) return s;
    throw config_error("unknown scheme '" + name +
                       "'; expected one of sdd_sw, hdchad_sw, hdd_sw, hdchad_bw, hdd_bw");
}

namespace {

RateEstimate mi_sdd_sw_gauss_hermite(const Constellation& c, double snr_db, int nodes) {
    if (nodes < 10) throw config_error("Gauss-Hermite needs at least 10 nodes per axis");
    const int m = c.order;
    const double sigma = noise_sigma(snr_db);
    const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
    const HermiteRule rule = hermite_rule(nodes);

    // Noise substitution z = sqrt(2) * sigma * u turns the complex Gaussian
    // expectation into a weight-normalized double Hermite sum (1/pi factor).
    double acc = 0.0;
    Eigen::ArrayXd e0(m), er(m), ei(m), expo(m);
    for (int k = 0; k < m; ++k) {
        for (int j = 0; j < m; ++j) {
            const std::complex<double> d = c.points[k] - c.points[j];
            e0[j] = -std::norm(d) * inv_two_var;
            er[j] = -d.real() / (sigma * sigma);
            ei[j] = -d.imag() / (sigma * sigma);
        }
        double exp_k = 0.0;
        for (int a = 0; a < nodes; ++a) {
            const double zr = std::sqrt(2.0) * sigma * rule.nodes[a];
            double inner = 0.0;
            for (int b = 0; b < nodes; ++b) {
                const double zi = std::sqrt(2.0) * sigma * rule.nodes[b];
                expo = e0 + zr * er + zi * ei;
                const double peak = expo.maxCoeff();
                // the j == k term contributes exp(0), so peak >= 0
                const double lse = peak + std::log((expo - peak).exp().sum());
                inner += rule.weights[b] * lse;
            }
            exp_k += rule.weights[a] * inner;
        }
        acc += exp_k / M_PI;
    }
    RateEstimate out;
    out.rate = std::log2(static_cast<double>(m)) - acc / (m * kLn2);
    return out;
}

double checked_row_delta(const DmcModel& dmc) {
    const int m = dmc.order;
    for (int k = 0; k < m; ++k) {
        const double row = dmc.transition.row(k).sum();
        if (std::abs(row - 1.0) > 1e-6)
            throw config_error("malformed transition matrix: row " + std::to_string(k) +
                               " sums to " + std::to_string(row));
    }
    return dmc.delta;
}

}  // namespace

RateEstimate mi_sdd_sw(const Constellation& c, double snr_db, SddMethod method,
                       const SddPrecision& precision) {
    if (method == SddMethod::gauss_hermite)
        return mi_sdd_sw_gauss_hermite(c, snr_db, precision.gh_nodes);
    const auto est = mc_mutual_information(c, snr_db, precision.mc_samples, precision.seed,
                                           precision.workers);
    return RateEstimate{est.rate, est.std_err};
}

double air_hdchad_sw(const DmcModel& dmc) {
    checked_row_delta(dmc);
    const int m = dmc.order;
    Eigen::VectorXd out_marginal = dmc.transition.colwise().sum() / m;
    // compensated summation: the plain running sum loses ~1e-12 at M = 256
    double info = 0.0, comp = 0.0;
    for (int k = 0; k < m; ++k) {
        for (int j = 0; j < m; ++j) {
            const double p = dmc.transition(k, j);
            if (p < 1e-300) continue;  // 0 log 0 := 0
            const double term = p * std::log2(p / out_marginal[j]) - comp;
            const double next = info + term;
            comp = (next - info) - term;
            info = next;
        }
    }
    return info / m;
}

double gmi_hdd_sw_closed(double delta, int order) {
    const double bound = static_cast<double>(order - 1) / order;
    if (delta < 0.0 || delta > bound)
        throw config_error("delta out of range: symbol error probability is bounded by (M-1)/M");
    return std::log2(static_cast<double>(order)) - binary_entropy(delta) -
           delta * std::log2(static_cast<double>(order - 1));
}

double gmi_hdd_sw_at_s(double delta, int order, double s) {
    // I(s) with the mismatch parameter pinned to delta; both log2(1 + x)
    // terms go through the stable helper since x spans many decades in s.
    const double mm1 = static_cast<double>(order - 1);
    const double log_lambda = std::log(delta / mm1) - std::log1p(-delta);
    const double l1 = log2_1p_c_exp(mm1, s * log_lambda);
    const double l2 = log2_1p_c_exp(1.0 / mm1, -s * log_lambda);
    return std::log2(static_cast<double>(order)) - (1.0 - delta) * l1 - delta * l2 -
           delta * std::log2(mm1);
}

GmiNumericResult gmi_hdd_sw_numeric(const DmcModel& dmc, const SGrid& grid) {
    const double delta = checked_row_delta(dmc);
    const int order = dmc.order;
    const double bound = static_cast<double>(order - 1) / order;
    if (!(delta > 0.0) || !(delta < bound))
        throw config_error("degenerate channel: GMI search needs 0 < delta < (M-1)/M; "
                           "use the closed form at the endpoints");
    if (!(grid.lo > 0.0) || !(grid.hi > grid.lo) || !(grid.step > 0.0))
        throw config_error("invalid s-grid");

    auto value = [&](double s) { return gmi_hdd_sw_at_s(delta, order, s); };

    double best_s = grid.lo;
    double best_v = value(grid.lo);
    for (double s = grid.lo + grid.step; s <= grid.hi + 1e-12; s += grid.step) {
        const double v = value(s);
        if (v > best_v) {
            best_v = v;
            best_s = s;
        }
    }

    // Golden-section refinement around the best grid cell; I(s) is concave.
    double lo = std::max(grid.lo, best_s - grid.step);
    double hi = std::min(grid.hi, best_s + grid.step);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = value(x1), f2 = value(x2);
    while (hi - lo > grid.refine_tol) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = value(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = value(x1);
        }
    }
    GmiNumericResult res;
    res.s_star = (lo + hi) / 2.0;
    res.rate = value(res.s_star);
    return res;
}

double air_hdchad_bw(const Eigen::VectorXd& eps_levels) {
    double rate = static_cast<double>(eps_levels.size());
    for (Eigen::Index i = 0; i < eps_levels.size(); ++i) {
        const double e = eps_levels[i];
        if (e < 0.0 || e > 0.5)
            throw config_error("bit level error probability outside [0, 1/2] (BSC convention)");
        rate -= binary_entropy(e);
    }
    return rate;
}

double gmi_hdd_bw(double eps_bar, int m) {
    if (eps_bar < 0.0 || eps_bar > 0.5)
        throw config_error("mean bit error probability outside [0, 1/2] (BSC convention)");
    return m * (1.0 - binary_entropy(eps_bar));
}

RateEstimate scheme_rate(const Constellation& c, Scheme scheme, double snr_db, SddMethod method,
                         const SddPrecision& precision) {
    if (scheme == Scheme::sdd_sw) return mi_sdd_sw(c, snr_db, method, precision);
    const DmcModel dmc = hard_dmc_analytic(c, snr_db);
    RateEstimate out;
    switch (scheme) {
        case Scheme::hdchad_sw: out.rate = air_hdchad_sw(dmc); break;
        case Scheme::hdd_sw: out.rate = gmi_hdd_sw_closed(dmc.delta, dmc.order); break;
        case Scheme::hdchad_bw: out.rate = air_hdchad_bw(dmc.eps_levels); break;
        case Scheme::hdd_bw: out.rate = gmi_hdd_bw(dmc.eps_bar, c.bits_per_symbol); break;
        case Scheme::sdd_sw: break;
    }
    return out;
}

double required_snr(const Constellation& c, Scheme scheme, double target_rate, double snr_lo_db,
                    double snr_hi_db, SddMethod method, const SddPrecision& precision) {
    if (snr_lo_db >= snr_hi_db) throw config_error("SNR bracket must satisfy lo < hi");
    auto rate_at = [&](double snr) { return scheme_rate(c, scheme, snr, method, precision).rate; };
    const double r_lo = rate_at(snr_lo_db);
    const double r_hi = rate_at(snr_hi_db);
    if (!(r_lo < target_rate && target_rate < r_hi))
        throw config_error("bracket does not straddle the target rate");
    double lo = snr_lo_db, hi = snr_hi_db;
    while (hi - lo > 0.01) {
        const double mid = (lo + hi) / 2.0;
        (rate_at(mid) < target_rate ? lo : hi) = mid;
    }
    return (lo + hi) / 2.0;
}

}  // namespace cmair
