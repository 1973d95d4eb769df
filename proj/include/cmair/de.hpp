#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace cmair {

enum class BddModel { miscorrection_aware, idealized };

// RS component code (q, n, t) with n <= q-1, 2t < n, plus every quantity the
// density evolution recursion needs, precomputed once and immutable:
// the MDS weight distribution A_alpha (exact big-integer evaluation, kept as
// logs), and the per-i decoding probabilities P_n(i) / Pbar_n(i).
class ComponentCodeSpec {
  public:
    ComponentCodeSpec(int q, int n, int t);

    int q() const { return q_; }
    int n() const { return n_; }
    int t() const { return t_; }
    int k() const { return n_ - 2 * t_; }

    // A_alpha converted to double (+inf when it exceeds the double range).
    double weight_distribution(int alpha) const;
    // ln A_alpha, -infinity for A_alpha = 0.
    double log_weight(int alpha) const;

    // P(designated symbol decoded erroneously | it was in error, i other errors).
    double p_n(int i) const;
    // Same given it was correct before decoding (the miscorrection term).
    double p_bar_n(int i) const;
    // Largest excess by which a raw P_n/Pbar_n value fell outside [0, 1]
    // before clamping; should never exceed rounding noise.
    double max_clamp_excess() const { return max_clamp_excess_; }

    // ln C(n-1, i), exact binomials converted to logs.
    double log_choose_nm1(int i) const { return log_choose_nm1_[i]; }

  private:
    int q_, n_, t_;
    std::vector<double> log_a_;          // ln A_alpha, alpha = 0..n
    std::vector<double> a_as_double_;    // A_alpha or +inf
    std::vector<double> p_n_;            // i = 0..n-1
    std::vector<double> p_bar_n_;        // i = 0..n-1
    std::vector<double> log_choose_nm1_; // ln C(n-1, i)
    double max_clamp_excess_ = 0.0;
};

double rs_weight_distribution(const ComponentCodeSpec& spec, int alpha);
double p_n(const ComponentCodeSpec& spec, int i);
double p_bar_n(const ComponentCodeSpec& spec, int i);

// One density-evolution update: the probability that a symbol stays (or
// becomes) erroneous after one extrinsic BDD round, given the incoming
// message error probability x and channel error probability p_s.
double f_update(const ComponentCodeSpec& spec, double x, double p_s, BddModel mode);

struct DeConfig {
    int spatial_len = 1;   // L
    int coupling_w = 1;    // w
    int window = 0;        // W in positions; 0 = full (no windowing)
    int max_iters = 1000;  // per window in windowed mode
    double convergence_tol = 1e-12;
    double target_error = 1e-6;  // post-FEC symbol error probability target
};
void validate(const DeConfig& config);

struct DeState {
    Eigen::VectorXd x;  // per-position VN->CN error probability
    int iterations = 0;
    bool converged = false;
    double mean_error() const { return x.size() ? x.mean() : 0.0; }
};

struct GldpcResult {
    double final_x = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Uncoupled GLDPC ensemble: scalar fixed-point iteration x <- f(x; p_s)
// from x = p_s.
GldpcResult de_gldpc(const ComponentCodeSpec& spec, double p_s, const DeConfig& config,
                     BddModel mode);

// Spatially coupled ensemble (L positions, coupling width w), full parallel
// schedule, perfect termination (x = 0 outside [1, L]). Requires window = 0.
DeState de_scgldpc(const ComponentCodeSpec& spec, double p_s, const DeConfig& config, BddModel mode);

// Sliding-window schedule: the window advances one position at a time and
// positions outside it stay frozen at their current values (decoded
// positions keep their converged values, future positions sit at p_s).
DeState de_window(const ComponentCodeSpec& spec, double p_s, const DeConfig& config, BddModel mode);

// Observer invoked after every global update with the running state.
using DeTraceFn = std::function<void(int iteration, const Eigen::VectorXd& x)>;

// Dispatch on the config: GLDPC for L = w = 1, otherwise full or windowed SC.
DeState run_de(const ComponentCodeSpec& spec, double p_s, const DeConfig& config, BddModel mode,
               const DeTraceFn& trace = {});

struct ThresholdResult {
    double p_star = 0.0;
    int bisection_steps = 0;
};

// Largest channel error probability whose DE run meets config.target_error,
// by bisection to 1e-5 absolute. DE must succeed at bracket_lo and fail at
// bracket_hi.
ThresholdResult threshold(const ComponentCodeSpec& spec, const DeConfig& config, double bracket_lo,
                          double bracket_hi, BddModel mode);

}  // namespace cmair
