#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include <Eigen/Dense>

namespace cmair {

inline constexpr double kLn2 = 0.6931471805599453;

// Gaussian tail probability Q(x) = P{N(0,1) > x}, evaluated through erfc so
// the far tail keeps full relative accuracy.
inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Binary entropy in bits, with h(0) = h(1) = 0 by continuity.
inline double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

// log2(1 + c * exp(w)) for c > 0, stable for any magnitude of w.
inline double log2_1p_c_exp(double c, double w) {
    const double u = w + std::log(c);
    if (u > 36.0) return u / kLn2 + std::log1p(std::exp(-u)) / kLn2;
    return std::log1p(std::exp(u)) / kLn2;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

// --- seeding ------------------------------------------------------------

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Substream seed for chunk `stream` of a run seeded with `seed`. Chunk
// boundaries depend only on the workload, never on the worker count, so
// merged tallies are reproducible for any level of parallelism.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 1));
}

// Small fixed-increment PCG-ish generator built on splitmix64; the standard
// library distributions are avoided so that sampled bytes are identical
// across standard-library implementations.
class SplitMix {
  public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t x = state_;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }
    // Uniform on (0, 1]; never returns 0 so it is safe under log().
    double next_unit() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }
    // Uniform integer in [0, n) by rejection-free scaling (n << 2^64 here).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }
    // One Box-Muller pair of independent standard normals.
    std::pair<double, double> next_gaussian_pair() {
        const double u1 = next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * M_PI * u2;
        return {r * std::cos(a), r * std::sin(a)};
    }

  private:
    std::uint64_t state_;
};

// Runs fn(chunk_index) for chunk_index in [0, n_chunks) on `workers` threads.
// The chunk decomposition is part of the caller's contract; this helper only
// schedules, so results merged in chunk order do not depend on the thread
// count.
void run_chunks(std::int64_t n_chunks, int workers, const std::function<void(std::int64_t)>& fn);

// Gauss-Hermite rule for weight exp(-x^2) via the Golub-Welsch eigenproblem.
struct HermiteRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
};
HermiteRule hermite_rule(int n);

// printf-style "%.12g", the fixed serialization width for CSV output.
std::string fmt_g12(double v);

}  // namespace cmair
