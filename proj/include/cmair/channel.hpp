#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "cmair/constellation.hpp"
#include "cmair/math_util.hpp"

namespace cmair {

// Hard-detection discrete memoryless channel: transition(k, j) is
// P(detect point j | send point k). delta is the symbol error probability,
// eps_levels the per-bit-level error probabilities (empty when the channel
// has no QAM labeling attached) and eps_bar their mean (NaN when absent).
//
// SNR convention, fixed project-wide: SNR = Es/N0 = 1/(2 sigma^2) with
// sigma^2 the per-axis (real dimension) noise variance and unit symbol energy.
struct DmcModel {
    int order = 0;
    Eigen::MatrixXd transition;
    double delta = 0.0;
    Eigen::VectorXd eps_levels;  // size 0 when not applicable
    double eps_bar = std::numeric_limits<double>::quiet_NaN();
    double snr_db = std::numeric_limits<double>::quiet_NaN();

    // provenance
    std::string method;  // "analytic", "monte_carlo" or "qsc"
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;

    bool has_eps() const { return eps_levels.size() > 0; }
};

// Per-axis noise standard deviation at the given Es/N0.
inline double noise_sigma(double snr_db) {
    return std::sqrt(1.0 / (2.0 * db_to_linear(snr_db)));
}

// Transition matrix of one PAM axis under minimum-distance detection,
// entry (u, v) = P(detect level v | send level u).
Eigen::MatrixXd pam_axis_transition(const Constellation& c, double sigma);

// Closed-form DMC for a square QAM at the given SNR. Decision regions
// factor into per-axis intervals, so entries are products of per-axis
// Gaussian interval probabilities.
DmcModel hard_dmc_analytic(const Constellation& c, double snr_db);

// Empirical DMC from `samples` uniform symbol draws with complex Gaussian
// noise and minimum-distance detection. Deterministic for a fixed seed and
// independent of the worker count: the sample budget is cut into fixed
// chunks with derived seeds and integer tallies are merged in chunk order.
DmcModel hard_dmc_montecarlo(const Constellation& c, double snr_db, std::uint64_t samples,
                             std::uint64_t seed, int workers = 1);

// q-ary symmetric channel: diagonal 1-p, off-diagonal p/(q-1). When q is a
// supported QAM order the bit-level statistics are populated from the Gray
// labeling, otherwise they are marked absent.
DmcModel qsc_model(int q, double p);

// Bit-level error probabilities derived from a transition matrix and the
// constellation labels.
Eigen::VectorXd eps_levels_from_transition(const Constellation& c, const Eigen::MatrixXd& transition);

// Independent route to the same quantities for Gray-labeled square QAM:
// direct per-axis PAM Gaussian integrals, bypassing the 2-D matrix.
Eigen::VectorXd eps_levels_from_pam_integrals(const Constellation& c, double snr_db);

// Minimum-distance detection of one received axis coordinate; boundary ties
// resolve toward the lower level index.
int detect_axis_level(const Constellation& c, double y_axis);

}  // namespace cmair
