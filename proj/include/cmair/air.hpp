#pragma once

#include <cstdint>
#include <string>

#include "cmair/channel.hpp"
#include "cmair/constellation.hpp"

namespace cmair {

// Detection/decoding schemes whose achievable rates this module evaluates.
//   sdd_sw     symbol-wise soft decision decoding, I(X;Y)
//   hdchad_sw  hard detection + channel-aware (DMC-metric) decoding, I(X;Xhat)
//   hdd_sw     hard detection + Hamming-metric decoding, GMI
//   hdchad_bw  bit-wise channel-aware decoding over m parallel BSCs
//   hdd_bw     bit-wise Hamming-metric decoding over m parallel BSCs
enum class Scheme { sdd_sw, hdchad_sw, hdd_sw, hdchad_bw, hdd_bw };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);

enum class SddMethod { gauss_hermite, monte_carlo };

struct SddPrecision {
    int gh_nodes = 64;  // per real dimension
    std::uint64_t mc_samples = 1000000;
    std::uint64_t seed = 1;
    int workers = 1;
};

struct RateEstimate {
    double rate = 0.0;     // bits per symbol
    double std_err = 0.0;  // zero for deterministic methods
};

// I(X;Y) for uniform inputs on the AWGN channel: 2-D Gauss-Hermite
// quadrature over the complex noise with the outer sum over X exact, or a
// Monte Carlo estimate with its standard error.
RateEstimate mi_sdd_sw(const Constellation& c, double snr_db,
                       SddMethod method = SddMethod::gauss_hermite,
                       const SddPrecision& precision = {});

// I(X;Xhat) of a hard-detection DMC with uniform inputs.
double air_hdchad_sw(const DmcModel& dmc);

// Closed-form GMI under the Hamming metric: log2 M - h(delta) - delta*log2(M-1).
double gmi_hdd_sw_closed(double delta, int order);

struct SGrid {
    double lo = 0.05;
    double hi = 4.0;
    double step = 0.05;
    double refine_tol = 1e-6;
};

struct GmiNumericResult {
    double rate = 0.0;
    double s_star = 0.0;
};

// GMI of the Hamming mismatched metric maximized over s > 0 on a grid plus
// golden-section refinement. The metric treats the channel as symmetric with
// mismatch parameter set to delta, so the value depends on the DMC only
// through delta; requires 0 < delta < (M-1)/M.
GmiNumericResult gmi_hdd_sw_numeric(const DmcModel& dmc, const SGrid& grid = {});

// The mismatched-metric information functional I(s) at a fixed s, exposed for
// verification of the maximizer.
double gmi_hdd_sw_at_s(double delta, int order, double s);

// m - sum_i h(eps_i); every eps_i must lie in [0, 1/2].
double air_hdchad_bw(const Eigen::VectorXd& eps_levels);

// m * (1 - h(eps_bar)); eps_bar must lie in [0, 1/2].
double gmi_hdd_bw(double eps_bar, int m);

// Rate of a scheme at one SNR point (the analytic DMC backs every
// hard-detection scheme; sdd_sw uses the requested method).
RateEstimate scheme_rate(const Constellation& c, Scheme scheme, double snr_db,
                         SddMethod method = SddMethod::gauss_hermite,
                         const SddPrecision& precision = {});

// SNR (dB) at which the scheme reaches target_rate, by bisection on the
// monotone rate-vs-SNR curve to within 0.01 dB. The bracket must straddle
// the target.
double required_snr(const Constellation& c, Scheme scheme, double target_rate, double snr_lo_db,
                    double snr_hi_db, SddMethod method = SddMethod::gauss_hermite,
                    const SddPrecision& precision = {});

}  // namespace cmair
