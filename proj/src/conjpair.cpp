#include "addiviol/conjpair.hpp"

#include "addiviol/parallel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace addiviol {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::violated: return "violated";
        case Verdict::not_violated: return "not_violated";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

PureState conjugate_pair_state(const Subspace& s) {
    const int n = s.ambient_dim();
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(n) * n);
    for (int i = 0; i < s.k(); ++i) {
        Vector psi = s.basis.col(i);
        Vector psi_conj = psi.conjugate();
        for (int r = 0; r < n; ++r) amps.segment(static_cast<Eigen::Index>(r) * n, n) += psi[r] * psi_conj;
    }
    amps /= std::sqrt(static_cast<double>(s.k()));
    return PureState(std::move(amps), {s.d_A, s.d_B, s.d_A, s.d_B});
}

SchmidtSpectrum joint_schmidt_spectrum(const Subspace& s) {
    return schmidt_spectrum(conjugate_pair_state(s), {0, 2});
}

double hayden_bound(const Subspace& s) {
    return static_cast<double>(s.k()) / (static_cast<double>(s.d_A) * s.d_B);
}

ViolationReport violation_report(const Subspace& s, RenyiOrder p,
                                 std::optional<double> certified_single_copy,
                                 const MinimizeOptions& opts) {
    ViolationReport rep;
    rep.p = p;
    rep.d_A = s.d_A;
    rep.d_B = s.d_B;
    rep.k = s.k();
    rep.joint_spectrum = joint_schmidt_spectrum(s);
    rep.lambda_max_exact = rep.joint_spectrum.lambda_max();
    rep.hayden_lambda_bound = hayden_bound(s);
    rep.joint_entropy = renyi_entropy(rep.joint_spectrum, p, opts.rank_threshold);

    // S_p <= (p/(p-1)) log2(1/lambda_max) holds only for p > 1.
    const double log_inv_bound = std::log2(1.0 / rep.hayden_lambda_bound);
    if (p.is_infinity())
        rep.analytic_joint_bound = log_inv_bound;
    else if (!p.is_one() && p.value() > 1.0)
        rep.analytic_joint_bound = p.value() / (p.value() - 1.0) * log_inv_bound;
    else
        rep.analytic_joint_bound = std::numeric_limits<double>::quiet_NaN();

    if (certified_single_copy) {
        rep.single_copy_min = *certified_single_copy;
        rep.single_copy_certified = true;
    } else if (is_antisymmetric(s)) {
        rep.single_copy_min = 1.0;  // majorization bound, tight for all p
        rep.single_copy_certified = true;
    } else {
        rep.single_copy_min = min_output_renyi(channel_from_subspace(s), p, opts).value;
        rep.single_copy_certified = false;
    }

    const bool joint_below = rep.joint_entropy < 2.0 * rep.single_copy_min - 1e-9;
    if (!rep.single_copy_certified)
        rep.verdict = Verdict::inconclusive;  // upper bound on the minimum proves nothing
    else
        rep.verdict = joint_below ? Verdict::violated : Verdict::not_violated;
    return rep;
}

ScanResult scan_violation(RenyiOrder p, int d_max) {
    if (d_max < 2) throw std::invalid_argument("scan_violation: d_max must be >= 2");
    ScanResult out;
    out.reports.resize(d_max - 1);
    parallel_for(d_max - 1, [&](int i) {
        out.reports[i] = violation_report(antisymmetric_subspace(i + 2), p, 1.0);
    });
    for (const auto& rep : out.reports)
        if (rep.verdict == Verdict::violated) {
            out.minimal_violating_d = rep.d_A;
            break;
        }
    return out;
}

}  // namespace addiviol
