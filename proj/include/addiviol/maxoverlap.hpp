#pragma once

#include "addiviol/subspace.hpp"
#include "addiviol/tensor.hpp"

#include <cstdint>
#include <vector>

namespace addiviol {

struct SeesawOptions {
    int restarts = 32;
    double tol = 1e-10;
    int max_iter = 1000;
    std::uint64_t seed = 0;
    bool record_trace = false;  // keep per-half-step iterates (tests only)
};

struct SeesawIterate {
    double objective;
    Vector a;
    Vector b;
};

struct OverlapResult {
    double value = 0.0;
    Vector witness_a;
    Vector witness_b;
    int iterations = 0;
    bool converged = false;
    int best_restart = -1;
    std::vector<SeesawIterate> trace;  // of the best restart, when recorded
};

// Single seesaw run from a Haar-random product start. Each half step
// replaces one side by the top eigenvector of the contracted projector,
// so the objective <a (x) b|P|a (x) b> is nondecreasing.
OverlapResult seesaw_product_overlap_once(const Matrix& projector, int d_A, int d_B,
                                          std::uint64_t seed, const SeesawOptions& opts);

// Multi-start maximum of <a (x) b|P|a (x) b> over unit product states.
// Restart r uses seed opts.seed + r; the best restart wins (ties by index).
// The result is a lower bound on the true supremum.
OverlapResult max_product_overlap(const Matrix& projector, int d_A, int d_B,
                                  const SeesawOptions& opts = {});

// Haar average of the product overlap: rank(P) / (d_A * d_B), rank via trace.
double average_product_overlap(const Matrix& projector, int d_A, int d_B);

// Largest squared Schmidt coefficient over unit vectors of the subspace;
// equal to the maximum product overlap with the subspace projector.
OverlapResult subspace_lambda_max(const Subspace& s, const SeesawOptions& opts = {});

// Grouped-cut seesaw for operators on interleaved factors
// (a_1, b_1, ..., a_n, b_n): regroups to (a_1..a_n):(b_1..b_n) and runs the
// bipartite seesaw over the grouped sides.
OverlapResult multipartite_max_product_overlap(const Matrix& projector,
                                               const std::vector<int>& dims_a,
                                               const std::vector<int>& dims_b,
                                               const SeesawOptions& opts = {});

}  // namespace addiviol
