#include "cmair/de.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_int.hpp>

#include "cmair/errors.hpp"
#include "cmair/math_util.hpp"

namespace cmair {

namespace {

using BigInt = boost::multiprecision::cpp_int;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_of_big(const BigInt& v) {
    if (v == 0) return kNegInf;
    const std::size_t bits = boost::multiprecision::msb(v) + 1;
    if (bits <= 62) return std::log(v.convert_to<double>());
    const std::size_t shift = bits - 62;
    const double top = BigInt(v >> shift).convert_to<double>();
    return std::log(top) + static_cast<double>(shift) * std::log(2.0);
}

// Pascal rows up to `rows`; row[a][b] = C(a, b). Exact integers.
std::vector<std::vector<BigInt>> pascal(int rows) {
    std::vector<std::vector<BigInt>> c(rows + 1);
    for (int a = 0; a <= rows; ++a) {
        c[a].assign(a + 1, BigInt(1));
        for (int b = 1; b < a; ++b) c[a][b] = c[a - 1][b - 1] + c[a - 1][b];
    }
    return c;
}

}  // namespace

ComponentCodeSpec::ComponentCodeSpec(int q, int n, int t) : q_(q), n_(n), t_(t) {
    if (q < 2) throw config_error("field size must be >= 2");
    if (t < 1) throw config_error("correction capability must be >= 1");
    if (2 * t >= n) throw config_error("component code needs 2t < n");
    if (n > q - 1) throw config_error("RS component code needs n <= q-1");

    const auto choose = pascal(n + 1);
    auto log_choose = [&](int a, int b) {
        if (b < 0 || b > a || a < 0) return kNegInf;
        return log_of_big(choose[a][b]);
    };

    // MDS weight distribution, exact:
    //   A_alpha = C(n, alpha) (q-1) sum_{j=0}^{alpha-d} (-1)^j C(alpha-1, j) q^{alpha-d-j}
    // with d = 2t+1; the alternating sum stays in integers so no cancellation
    // survives the conversion to logs.
    const int d = 2 * t + 1;
    std::vector<BigInt> qpow(n + 1);
    qpow[0] = 1;
    for (int e = 1; e <= n; ++e) qpow[e] = qpow[e - 1] * q;
    std::vector<BigInt> a_exact(n + 1, BigInt(0));
    a_exact[0] = 1;
    for (int alpha = d; alpha <= n; ++alpha) {
        BigInt sum = 0;
        for (int j = 0; j <= alpha - d; ++j) {
            const BigInt term = choose[alpha - 1][j] * qpow[alpha - d - j];
            sum += (j % 2 == 0) ? term : -term;
        }
        a_exact[alpha] = choose[n][alpha] * (q - 1) * sum;
        if (a_exact[alpha] < 0)
            throw config_error("weight distribution evaluated negative; invalid (q, n, t)");
    }
    log_a_.resize(n + 1);
    a_as_double_.resize(n + 1);
    for (int alpha = 0; alpha <= n; ++alpha) {
        log_a_[alpha] = log_of_big(a_exact[alpha]);
        const double logv = log_a_[alpha];
        a_as_double_[alpha] =
            logv == kNegInf ? 0.0
                            : (logv > 709.0 ? std::numeric_limits<double>::infinity()
                                            : a_exact[alpha].convert_to<double>());
    }

    log_choose_nm1_.resize(n);
    for (int i = 0; i <= n - 1; ++i) log_choose_nm1_[i] = log_choose(n - 1, i);

    // P_n(i) and Pbar_n(i): triple sum over (delta_idx, j, z) with
    // alpha = i - delta_idx + 2j - z + 1; every factor enters in log space
    // since A_alpha and the binomials overwhelm doubles at n = 255.
    // delta_idx is the Hamming distance between the received word and the
    // miscorrection target (named to avoid clashing with the symbol error
    // probability delta used elsewhere).
    const double log_qm1 = std::log(static_cast<double>(q - 1));
    const double log_qm2 = q > 2 ? std::log(static_cast<double>(q - 2)) : kNegInf;
    p_n_.assign(n, 0.0);
    p_bar_n_.assign(n, 0.0);
    for (int i = 0; i <= n - 1; ++i) {
        double sum_p = 0.0, sum_pbar = 0.0;
        for (int delta_idx = 1; delta_idx <= t; ++delta_idx) {
            for (int j = 0; j <= delta_idx - 1; ++j) {
                for (int z = 0; z <= j; ++z) {
                    const int alpha = i - delta_idx + 2 * j - z + 1;
                    // alpha beyond n-1 contributes nothing: A_{alpha} pairs
                    // with the vanishing (n-alpha)/n factor at alpha = n and
                    // A_{alpha+1} = 0 past it
                    if (alpha < 0 || alpha >= n) continue;
                    if (n - alpha - 1 < delta_idx - j - 1) continue;
                    if (z > 0 && q == 2) continue;
                    const double log_f = log_choose(alpha, alpha - j) + log_choose(j, z) +
                                         z * log_qm2 +
                                         log_choose(n - alpha - 1, delta_idx - j - 1) +
                                         (delta_idx - j - 1) * log_qm1 -
                                         log_choose(n - 1, i) - i * log_qm1;
                    if (log_f == kNegInf) continue;
                    if (log_a_[alpha] != kNegInf)
                        sum_p += std::exp(log_f + log_a_[alpha] +
                                          std::log(static_cast<double>(n - alpha) / n));
                    if (log_a_[alpha + 1] != kNegInf)
                        sum_pbar += std::exp(log_f + log_a_[alpha + 1] +
                                             std::log(static_cast<double>(alpha + 1) / n));
                }
            }
        }
        const double raw_p = i <= t - 1 ? 0.0 : 1.0 - sum_p;
        const double raw_pbar = i <= t ? 0.0 : sum_pbar;
        max_clamp_excess_ = std::max({max_clamp_excess_, -raw_p, raw_p - 1.0, -raw_pbar,
                                      raw_pbar - 1.0});
        p_n_[i] = std::clamp(raw_p, 0.0, 1.0);
        p_bar_n_[i] = std::clamp(raw_pbar, 0.0, 1.0);
    }
}

double ComponentCodeSpec::weight_distribution(int alpha) const {
    if (alpha < 0 || alpha > n_) throw config_error("codeword weight out of range [0, n]");
    return a_as_double_[alpha];
}

double ComponentCodeSpec::log_weight(int alpha) const {
    if (alpha < 0 || alpha > n_) throw config_error("codeword weight out of range [0, n]");
    return log_a_[alpha];
}

double ComponentCodeSpec::p_n(int i) const {
    if (i < 0 || i > n_ - 1) throw config_error("error count out of range [0, n-1]");
    return p_n_[i];
}

double ComponentCodeSpec::p_bar_n(int i) const {
    if (i < 0 || i > n_ - 1) throw config_error("error count out of range [0, n-1]");
    return p_bar_n_[i];
}

double rs_weight_distribution(const ComponentCodeSpec& spec, int alpha) {
    return spec.weight_distribution(alpha);
}
double p_n(const ComponentCodeSpec& spec, int i) { return spec.p_n(i); }
double p_bar_n(const ComponentCodeSpec& spec, int i) { return spec.p_bar_n(i); }

namespace {

// Per-run evaluator: the mixed per-i probabilities depend only on p_s and the
// mode, so they are folded once; each update is then one binomial sweep.
class FUpdater {
  public:
    FUpdater(const ComponentCodeSpec& spec, double p_s, BddModel mode) : spec_(spec) {
        if (p_s < 0.0 || p_s > 1.0) throw config_error("channel error probability outside [0, 1]");
        const int n = spec.n();
        g_.resize(n);
        for (int i = 0; i < n; ++i) {
            const double pn =
                mode == BddModel::miscorrection_aware ? spec.p_n(i) : (i >= spec.t() ? 1.0 : 0.0);
            const double pbar = mode == BddModel::miscorrection_aware ? spec.p_bar_n(i) : 0.0;
            g_[i] = p_s * pn + (1.0 - p_s) * pbar;
        }
    }

    double operator()(double x) const {
        if (x < 0.0 || x > 1.0) throw config_error("message error probability outside [0, 1]");
        const int n = spec_.n();
        if (x == 0.0) return g_[0];
        if (x == 1.0) return g_[n - 1];
        const double lx = std::log(x), l1mx = std::log1p(-x);
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            if (g_[i] == 0.0) continue;
            acc += g_[i] * std::exp(spec_.log_choose_nm1(i) + i * lx + (n - 1 - i) * l1mx);
        }
        return std::min(acc, 1.0);
    }

  private:
    const ComponentCodeSpec& spec_;
    std::vector<double> g_;
};

// Synchronous update of positions [lo, hi] (0-based, inclusive); reads come
// from `from`, writes go to `to`, and indices outside [0, L) contribute 0
// (perfect termination).
double sweep_positions(const FUpdater& f, const Eigen::VectorXd& from, Eigen::VectorXd& to, int lo,
                       int hi, int L, int w) {
    double max_change = 0.0;
    for (int i = lo; i <= hi; ++i) {
        double acc = 0.0;
        for (int l = 0; l < w; ++l) {
            const int cn = i - l;
            double avg = 0.0;
            for (int j = 0; j < w; ++j) {
                const int v = cn + j;
                if (v >= 0 && v < L) avg += from[v];
            }
            acc += f(avg / w);
        }
        to[i] = acc / w;
        max_change = std::max(max_change, std::abs(to[i] - from[i]));
    }
    return max_change;
}

}  // namespace

double f_update(const ComponentCodeSpec& spec, double x, double p_s, BddModel mode) {
    return FUpdater(spec, p_s, mode)(x);
}

void validate(const DeConfig& config) {
    if (config.coupling_w < 1) throw config_error("coupling width must be >= 1");
    if (config.spatial_len < config.coupling_w)
        throw config_error("spatial length must be >= coupling width");
    if (config.window < 0 || config.window > config.spatial_len)
        throw config_error("window must lie in [1, L], or 0 for full decoding");
    if (config.max_iters < 1) throw config_error("iteration budget must be >= 1");
    if (!(config.convergence_tol >= 0.0)) throw config_error("convergence tolerance must be >= 0");
}

GldpcResult de_gldpc(const ComponentCodeSpec& spec, double p_s, const DeConfig& config,
                     BddModel mode) {
    validate(config);
    const FUpdater f(spec, p_s, mode);
    GldpcResult res;
    double x = p_s;
    for (int it = 0; it < config.max_iters; ++it) {
        const double next = f(x);
        res.iterations = it + 1;
        const double change = std::abs(next - x);
        x = next;
        if (change < config.convergence_tol) {
            res.converged = true;
            break;
        }
    }
    res.final_x = x;
    return res;
}

namespace {

DeState run_windowed(const ComponentCodeSpec& spec, double p_s, const DeConfig& config,
                     BddModel mode, int window, const DeTraceFn& trace) {
    const FUpdater f(spec, p_s, mode);
    const int L = config.spatial_len;
    const int w = config.coupling_w;
    DeState state;
    state.x = Eigen::VectorXd::Constant(L, p_s);
    Eigen::VectorXd next = state.x;
    bool all_converged = true;
    for (int wj = 0; wj + window <= L; ++wj) {
        bool converged = false;
        for (int it = 0; it < config.max_iters; ++it) {
            const double change =
                sweep_positions(f, state.x, next, wj, wj + window - 1, L, w);
            state.x.segment(wj, window) = next.segment(wj, window);
            ++state.iterations;
            if (trace) trace(state.iterations, state.x);
            if (change < config.convergence_tol) {
                converged = true;
                break;
            }
        }
        all_converged = all_converged && converged;
    }
    state.converged = all_converged;
    return state;
}

}  // namespace

DeState de_scgldpc(const ComponentCodeSpec& spec, double p_s, const DeConfig& config,
                   BddModel mode) {
    validate(config);
    if (config.window != 0)
        throw config_error("full spatially coupled DE requires window = 0 (full)");
    return run_windowed(spec, p_s, config, mode, config.spatial_len, {});
}

DeState de_window(const ComponentCodeSpec& spec, double p_s, const DeConfig& config, BddModel mode) {
    validate(config);
    if (config.window < 1) throw config_error("window decoding requires 1 <= W <= L");
    return run_windowed(spec, p_s, config, mode, config.window, {});
}

DeState run_de(const ComponentCodeSpec& spec, double p_s, const DeConfig& config, BddModel mode,
               const DeTraceFn& trace) {
    validate(config);
    if (config.spatial_len == 1 && config.coupling_w == 1 && !trace) {
        const GldpcResult r = de_gldpc(spec, p_s, config, mode);
        DeState state;
        state.x = Eigen::VectorXd::Constant(1, r.final_x);
        state.iterations = r.iterations;
        state.converged = r.converged;
        return state;
    }
    return run_windowed(spec, p_s, config, mode,
                        config.window == 0 ? config.spatial_len : config.window, trace);
}

ThresholdResult threshold(const ComponentCodeSpec& spec, const DeConfig& config, double bracket_lo,
                          double bracket_hi, BddModel mode) {
    validate(config);
    if (!(bracket_lo < bracket_hi)) throw config_error("threshold bracket must satisfy lo < hi");
    const double pmax = static_cast<double>(spec.q() - 1) / spec.q();
    if (bracket_lo < 0.0 || bracket_hi > pmax)
        throw config_error("threshold bracket outside [0, (q-1)/q]");
    auto succeeds = [&](double p) {
        return run_de(spec, p, config, mode).mean_error() <= config.target_error;
    };
    if (!succeeds(bracket_lo))
        throw config_error("DE does not reach the target error at the lower bracket");
    if (succeeds(bracket_hi))
        throw config_error("DE already reaches the target error at the upper bracket");
    ThresholdResult res;
    double lo = bracket_lo, hi = bracket_hi;
    while (hi - lo > 1e-5) {
        const double mid = (lo + hi) / 2.0;
        (succeeds(mid) ? lo : hi) = mid;
        ++res.bisection_steps;
    }
    res.p_star = lo;
    return res;
}

}  // namespace cmair
