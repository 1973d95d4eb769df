#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cmair/constellation.hpp"
#include "cmair/rs.hpp"

namespace cmair {

// Empirical bounded-distance-decoding statistics for one RS component code.
// Index i counts the *other* symbol errors among the remaining n-1 symbols:
// per_i_error_given_error[i] estimates P_n(i) (designated symbol in error
// before decoding), per_i_error_given_correct[i] estimates Pbar_n(i)
// (designated symbol correct before decoding, corrupted by a miscorrection).
// Exhaustive tallies are exact integer ratios.
struct BddStats {
    int q = 0, n = 0, t = 0;
    std::string enumeration;  // "exhaustive" when every i was exhausted, else "sampled"
    std::uint64_t budget = 0;
    std::uint64_t seed = 0;
    std::vector<double> per_i_error_given_error;
    std::vector<double> per_i_error_given_correct;
    std::vector<std::uint64_t> trials_given_error;
    std::vector<std::uint64_t> errors_given_error;
    std::vector<std::uint64_t> trials_given_correct;
    std::vector<std::uint64_t> errors_given_correct;
};

// Runs true BDD over error patterns with a designated position plus i other
// uniformly placed errors (uniform nonzero values). Each i is exhausted when
// its pattern count is within `budget`, otherwise `budget` patterns are
// sampled with the derived-seed substream scheme. Deterministic for a fixed
// seed, independent of the worker count.
BddStats enumerate_bdd_stats(int q, int n, int t, int i_max, std::uint64_t budget,
                             std::uint64_t seed, int workers = 1);

struct MiEstimate {
    double rate = 0.0;
    double std_err = 0.0;
    std::uint64_t samples = 0;
};

// Sample-mean estimator of I(X;Y) on the AWGN channel; the independent
// check of the Gauss-Hermite quadrature path.
MiEstimate mc_mutual_information(const Constellation& c, double snr_db, std::uint64_t samples,
                                 std::uint64_t seed, int workers = 1);

}  // namespace cmair
