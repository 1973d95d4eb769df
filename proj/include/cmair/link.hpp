#pragma once

#include <optional>

#include "cmair/air.hpp"
#include "cmair/constellation.hpp"

namespace cmair {

// Idealized multi-span EDFA link under the incoherent GN model. The middle
// WDM channel sees SNR = P / (N*P_ase + N*eta*P^3) with P the per-channel
// launch power, P_ase the per-span amplifier noise in the signal bandwidth
// and eta the per-span nonlinear interference coefficient. Power accounting
// is dual-polarization throughout; the resulting SNR doubles as the
// per-polarization Es/N0 of the AWGN modules.
struct LinkModel {
    double span_length_km = 80.0;
    double attenuation_db_per_km = 0.2;
    double dispersion_ps_nm_km = 17.0;
    double gamma_per_w_km = 1.3;
    double wavelength_nm = 1550.0;
    double symbol_rate_gbaud = 32.0;
    double edfa_noise_figure_db = 4.5;
    int channel_count = 81;
    double channel_spacing_ghz = 32.0;  // Nyquist-spaced by default
    // Per-span NLI coefficient [1/W^2]; when absent it comes from the GN
    // closed form below. Exposed as data because measured links rarely match
    // textbook eta exactly.
    std::optional<double> nli_coefficient;
    double max_launch_dbm = 10.0;
};

void validate(const LinkModel& link);

// Dual-polarization amplified-spontaneous-emission power per span in the
// symbol-rate bandwidth: NF * h * nu * (G - 1) * Rs.
double ase_power_per_span_w(const LinkModel& link);

// Per-span GN NLI coefficient eta [1/W^2]: incoherent accumulation closed
// form for a flat WDM comb, or the configured override.
double nli_coefficient_per_span(const LinkModel& link);

// Middle-channel SNR in dB after n_spans at the given launch power.
double snr_at_distance_db(const LinkModel& link, int n_spans, double launch_power_dbm);

struct LaunchOptimum {
    double power_dbm = 0.0;
    double snr_db = 0.0;
    bool clipped = false;  // true when the optimum hit max_launch_dbm (eta = 0 case)
};

// Stationary point of P/(a + b*P^3): P_opt = (P_ase / (2 eta))^(1/3),
// independent of the span count under incoherent accumulation.
LaunchOptimum optimize_launch_power(const LinkModel& link, int n_spans);

// Derivative-free golden-section route to the same optimum, kept as the
// independent check of the closed form.
LaunchOptimum optimize_launch_power_scan(const LinkModel& link, int n_spans);

struct ReachResult {
    int spans = 0;
    double distance_km = 0.0;
    double snr_db = 0.0;
    double rate_per_pol = 0.0;  // bits per symbol per polarization at the reach
};

// Largest span count whose optimized-launch SNR still supports
// target_rate_per_pol under the scheme; distance = spans * span_length.
ReachResult reach(const LinkModel& link, const Constellation& c, Scheme scheme,
                  double target_rate_per_pol);

}  // namespace cmair
