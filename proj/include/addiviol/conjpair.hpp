#pragma once

#include "addiviol/minentropy.hpp"
#include "addiviol/renyi.hpp"
#include "addiviol/subspace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace addiviol {

enum class Verdict { violated, not_violated, inconclusive };

std::string to_string(Verdict v);

struct ViolationReport {
    RenyiOrder p = RenyiOrder::one();
    int d_A = 0;
    int d_B = 0;
    int k = 0;
    double single_copy_min = 0.0;       // certified lower bound or optimizer upper bound
    bool single_copy_certified = false;
    double joint_entropy = 0.0;         // exact S_p of the conjugate-pair trial state
    double analytic_joint_bound = 0.0;  // (p/(p-1)) log2(1/hayden), NaN for p <= 1
    double hayden_lambda_bound = 0.0;
    double lambda_max_exact = 0.0;
    SchmidtSpectrum joint_spectrum;
    Verdict verdict = Verdict::inconclusive;
};

// psi+(P) = (1/sqrt k) sum_i |psi_i>_{AB} |psi_i*>_{A'B'} on factors
// (A, B, A', B'); basis independent, maximally entangled across AB:A'B'.
PureState conjugate_pair_state(const Subspace& s);

// Schmidt spectrum of psi+(P) across the regrouped cut (A,A'):(B,B').
SchmidtSpectrum joint_schmidt_spectrum(const Subspace& s);

// dim P / (d_A d_B): lower bound on the joint lambda_max.
double hayden_bound(const Subspace& s);

// Compares the exact trial-state entropy against twice the single-copy
// minimum. The single-copy value is certified (1 bit) for antisymmetric
// subspaces or when the caller supplies a certified bound; otherwise the
// optimizer upper bound is reported and the verdict stays inconclusive.
ViolationReport violation_report(const Subspace& s, RenyiOrder p,
                                 std::optional<double> certified_single_copy = std::nullopt,
                                 const MinimizeOptions& opts = {});

struct ScanResult {
    std::vector<ViolationReport> reports;        // d = 2 .. d_max, in order
    std::optional<int> minimal_violating_d;
};

// Antisymmetric-subspace violation scan over local dimension.
ScanResult scan_violation(RenyiOrder p, int d_max);

}  // namespace addiviol
