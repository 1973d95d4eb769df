#include "cmair/link.hpp"

#include <cmath>

#include "cmair/errors.hpp"

namespace cmair {

namespace {

constexpr double kPlanck = 6.62607015e-34;    // J s
constexpr double kLightSpeed = 2.99792458e8;  // m/s

double dbm_to_w(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }
double w_to_dbm(double w) { return 10.0 * std::log10(w / 1e-3); }

}  // namespace

void validate(const LinkModel& link) {
    const double fields[] = {link.span_length_km,    link.attenuation_db_per_km,
                             link.dispersion_ps_nm_km, link.gamma_per_w_km,
                             link.wavelength_nm,     link.symbol_rate_gbaud,
                             link.edfa_noise_figure_db, link.channel_spacing_ghz};
    for (const double v : fields)
        if (!(v > 0.0)) throw config_error("link parameters must be strictly positive");
    if (link.channel_count < 1 || link.channel_count % 2 == 0)
        throw config_error("channel count must be odd so the middle channel is well defined");
    if (link.nli_coefficient && *link.nli_coefficient < 0.0)
        throw config_error("NLI coefficient must be >= 0");
}

double ase_power_per_span_w(const LinkModel& link) {
    const double nf = db_to_linear(link.edfa_noise_figure_db);
    const double gain = db_to_linear(link.attenuation_db_per_km * link.span_length_km);
    const double nu = kLightSpeed / (link.wavelength_nm * 1e-9);
    const double rs = link.symbol_rate_gbaud * 1e9;
    return nf * kPlanck * nu * (gain - 1.0) * rs;
}

double nli_coefficient_per_span(const LinkModel& link) {
    if (link.nli_coefficient) return *link.nli_coefficient;
    const double alpha = link.attenuation_db_per_km * std::log(10.0) / 10.0 / 1000.0;  // 1/m
    const double span_m = link.span_length_km * 1000.0;
    const double l_eff = (1.0 - std::exp(-alpha * span_m)) / alpha;
    const double l_eff_a = 1.0 / alpha;
    const double lambda = link.wavelength_nm * 1e-9;
    const double beta2 = std::abs(-(link.dispersion_ps_nm_km * 1e-6) * lambda * lambda /
                                  (2.0 * M_PI * kLightSpeed));
    const double gamma = link.gamma_per_w_km * 1e-3;  // 1/W/m
    const double rs = link.symbol_rate_gbaud * 1e9;
    const double spacing = link.channel_spacing_ghz * 1e9;
    const double b_wdm = link.channel_count * spacing;
    // NLI PSD at the band center for a flat comb of PSD G: (8/27) gamma^2
    // L_eff^2 asinh(pi^2/2 |b2| L_eff,a B^2) / (pi |b2| L_eff,a) * G^3;
    // converting PSD to per-channel powers gives eta = psd_coef * Rs / df^3.
    const double psd_coef = (8.0 / 27.0) * gamma * gamma * l_eff * l_eff *
                            std::asinh(M_PI * M_PI / 2.0 * beta2 * l_eff_a * b_wdm * b_wdm) /
                            (M_PI * beta2 * l_eff_a);
    return psd_coef * rs / (spacing * spacing * spacing);
}

double snr_at_distance_db(const LinkModel& link, int n_spans, double launch_power_dbm) {
    validate(link);
    if (n_spans < 1) throw config_error("span count must be >= 1");
    const double p = dbm_to_w(launch_power_dbm);
    if (!(p > 0.0) || !std::isfinite(p)) throw config_error("nonphysical launch power");
    const double ase = n_spans * ase_power_per_span_w(link);
    const double nli = n_spans * nli_coefficient_per_span(link) * p * p * p;
    return linear_to_db(p / (ase + nli));
}

LaunchOptimum optimize_launch_power(const LinkModel& link, int n_spans) {
    validate(link);
    if (n_spans < 1) throw config_error("span count must be >= 1");
    const double eta = nli_coefficient_per_span(link);
    LaunchOptimum opt;
    if (eta <= 0.0) {
        // linear regime: SNR grows without bound in P
        opt.power_dbm = link.max_launch_dbm;
        opt.clipped = true;
    } else {
        const double p_opt = std::cbrt(ase_power_per_span_w(link) / (2.0 * eta));
        opt.power_dbm = w_to_dbm(p_opt);
        if (opt.power_dbm > link.max_launch_dbm) {
            opt.power_dbm = link.max_launch_dbm;
            opt.clipped = true;
        }
    }
    opt.snr_db = snr_at_distance_db(link, n_spans, opt.power_dbm);
    return opt;
}

LaunchOptimum optimize_launch_power_scan(const LinkModel& link, int n_spans) {
    validate(link);
    if (n_spans < 1) throw config_error("span count must be >= 1");
    double lo = -20.0, hi = link.max_launch_dbm;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    auto snr = [&](double dbm) { return snr_at_distance_db(link, n_spans, dbm); };
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = snr(x1), f2 = snr(x2);
    while (hi - lo > 1e-4) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = snr(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = snr(x1);
        }
    }
    LaunchOptimum opt;
    opt.power_dbm = (lo + hi) / 2.0;
    opt.snr_db = snr(opt.power_dbm);
    opt.clipped = link.max_launch_dbm - opt.power_dbm < 1e-3;
    return opt;
}

ReachResult reach(const LinkModel& link, const Constellation& c, Scheme scheme,
                  double target_rate_per_pol) {
    validate(link);
    if (!(target_rate_per_pol > 0.0) || !(target_rate_per_pol < c.bits_per_symbol))
        throw config_error("target rate per polarization must lie in (0, m)");
    auto rate_at = [&](int n) {
        return scheme_rate(c, scheme, optimize_launch_power(link, n).snr_db).rate;
    };
    if (rate_at(1) < target_rate_per_pol)
        throw config_error("target rate unreachable at the minimum distance of one span");
    // exponential bound then integer bisection on the monotone rate curve
    int lo = 1, hi = 2;
    const int cap = 1 << 20;
    while (hi < cap && rate_at(hi) >= target_rate_per_pol) {
        lo = hi;
        hi *= 2;
    }
    if (hi >= cap) throw config_error("reach exceeds the supported span count");
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        (rate_at(mid) >= target_rate_per_pol ? lo : hi) = mid;
    }
    ReachResult res;
    res.spans = lo;
    res.distance_km = lo * link.span_length_km;
    const LaunchOptimum opt = optimize_launch_power(link, lo);
    res.snr_db = opt.snr_db;
    res.rate_per_pol = scheme_rate(c, scheme, opt.snr_db).rate;
    return res;
}

}  // namespace cmair
