#pragma once

#include "addiviol/maxoverlap.hpp"
#include "addiviol/renyi.hpp"
#include "addiviol/subspace.hpp"

#include <cstdint>

namespace addiviol {

struct MinimizeOptions {
    int restarts = 32;  // raised to 64 internally for p < 1 (rougher landscape)
    int max_iter = 1000;
    double tol = 1e-10;
    double rank_threshold = kDefaultRankEps;
    std::uint64_t seed = 0;
};

struct MinEntropyResult {
    RenyiOrder p = RenyiOrder::one();
    double value = 0.0;               // bits; an upper bound on the true minimum
    Vector argmin;                    // input-space unit vector
    SchmidtSpectrum spectrum_at_argmin;
    int restarts_used = 0;
    bool converged = true;
};

// Minimum output Renyi entropy of the channel over pure inputs.
//   p = inf: -log2 of the subspace maximum product overlap (seesaw);
//   p = 0:   log2 of the smallest output rank seen over random and
//            optimized inputs (rank_threshold policy);
//   else:    multi-start projected gradient descent on the input sphere.
MinEntropyResult min_output_renyi(const Channel& channel, RenyiOrder p,
                                  const MinimizeOptions& opts = {});

// Certified lower bound for antisymmetric-subspace channels: 1 bit for all p.
double antisym_min_entropy_bound(int d, RenyiOrder p);

// 2 (1 - d/D^2) log2 D + h(d/D^2); additivity of the von Neumann entropy is
// violated by a d-dimensional subspace of C^D (x) C^D with min entanglement
// >= 1 whenever this value is below 2.
double vn_violation_condition(int D, int d);

// Minimum entanglement entropy over unit vectors of the subspace.
MinEntropyResult screen_subspace(const Subspace& s, RenyiOrder p,
                                 const MinimizeOptions& opts = {});

}  // namespace addiviol
