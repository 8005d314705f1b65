#include "addiviol/conjpair.hpp"

#include <doctest.h>

#include <cmath>

using namespace addiviol;

namespace {

// Closed form for the antisymmetric conjugate-pair spectrum.
std::vector<double> antisym_closed_form(int d) {
    std::vector<double> lam{(d - 1.0) / (2.0 * d)};
    for (int i = 0; i < d * d - 1; ++i) lam.push_back(1.0 / (2.0 * d * (d - 1.0)));
    return lam;
}

}  // namespace

TEST_CASE("rank-one subspace pairs to v (x) v*") {
    Subspace s = random_subspace(2, 2, 1, 77);
    PureState psi = conjugate_pair_state(s);
    Vector expected(16);
    for (int r = 0; r < 4; ++r)
        expected.segment(4 * r, 4) = s.basis.col(0)[r] * s.basis.col(0).conjugate();
    CHECK((psi.amps - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("conjugate pair reduces to the normalized projector") {
    Subspace s = random_subspace(2, 3, 3, 13);
    PureState psi = conjugate_pair_state(s);
    Matrix rho = psi.amps * psi.amps.adjoint();
    Matrix reduced = partial_trace(rho, {2, 3, 2, 3}, {0, 1});
    CHECK((reduced - s.projector() / 3.0).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("conjugate pair is basis independent") {
    Subspace s = random_subspace(3, 3, 4, 5);
    Matrix u = haar_random_unitary(4, 6);
    Subspace rotated(3, 3, s.basis * u);
    PureState a = conjugate_pair_state(s);
    PureState b = conjugate_pair_state(rotated);
    CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("oracle: joint spectrum equals the reshuffled projector SVD") {
    // Independent route: the cut matrix of psi+(P) is the reshuffle
    // M[(a,a'),(b,b')] = P[(a,b),(a',b')] / sqrt(k); compare spectra.
    const int d = 3;
    Subspace s = antisymmetric_subspace(d);
    Matrix p = s.projector();
    Matrix m(d * d, d * d);
    for (int a = 0; a < d; ++a)
        for (int a2 = 0; a2 < d; ++a2)
            for (int b = 0; b < d; ++b)
                for (int b2 = 0; b2 < d; ++b2)
                    m(a * d + a2, b * d + b2) = p(a * d + b, a2 * d + b2);
    m /= std::sqrt(static_cast<double>(s.k()));
    Eigen::JacobiSVD<Matrix> svd(m);

    SchmidtSpectrum spec = joint_schmidt_spectrum(s);
    REQUIRE(spec.size() == svd.singularValues().size());
    for (int i = 0; i < spec.size(); ++i)
        CHECK(spec.lambdas[i] ==
              doctest::Approx(svd.singularValues()[i] * svd.singularValues()[i]).epsilon(1e-10));
    CHECK(spec.lambda_max() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("oracle: joint spectrum equals the reduced density eigenvalues") {
    // Second independent route: eigenvalues of the traced-out density
    // matrix across the same cut.
    Subspace s = random_subspace(2, 3, 3, 41);
    PureState psi = conjugate_pair_state(s);
    Matrix rho = psi.amps * psi.amps.adjoint();
    Matrix reduced = partial_trace(rho, {2, 3, 2, 3}, {0, 2});
    auto evals = hermitian_spectrum(reduced);
    SchmidtSpectrum spec = joint_schmidt_spectrum(s);
    REQUIRE(spec.size() <= static_cast<int>(evals.size()));
    for (int i = 0; i < spec.size(); ++i)
        CHECK(std::abs(spec.lambdas[i] - evals[i]) < 1e-10);
}

TEST_CASE("antisymmetric joint spectrum matches the closed form") {
    for (int d = 3; d <= 5; ++d) {
        SchmidtSpectrum spec = joint_schmidt_spectrum(antisymmetric_subspace(d));
        auto expected = antisym_closed_form(d);
        REQUIRE(spec.size() == static_cast<int>(expected.size()));
        for (std::size_t i = 0; i < expected.size(); ++i)
            CHECK(std::abs(spec.lambdas[i] - expected[i]) < 1e-10);
    }
}

TEST_CASE("the dimension bound is tight for antisymmetric pairs") {
    for (int d = 3; d <= 12; ++d) {
        Subspace s = antisymmetric_subspace(d);
        double lmax = joint_schmidt_spectrum(s).lambda_max();
        CHECK(std::abs(lmax - (d - 1.0) / (2.0 * d)) < 1e-10);
        CHECK(std::abs(lmax - hayden_bound(s)) < 1e-10);
    }
}

TEST_CASE("full space pairs into a product across the regrouped cut") {
    Subspace full(2, 2, Matrix::Identity(4, 4));
    SchmidtSpectrum spec = joint_schmidt_spectrum(full);
    REQUIRE(spec.size() == 1);
    CHECK(spec.lambda_max() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("hayden bound values") {
    CHECK(hayden_bound(antisymmetric_subspace(3)) == doctest::Approx(1.0 / 3.0));
    CHECK(hayden_bound(antisymmetric_subspace(5)) == doctest::Approx(0.4));
    Subspace full(2, 2, Matrix::Identity(4, 4));
    CHECK(hayden_bound(full) == doctest::Approx(1.0));
    CHECK(hayden_bound(random_subspace(2, 2, 1, 3)) == doctest::Approx(0.25));
}

TEST_CASE("violation report at d=3") {
    Subspace s = antisymmetric_subspace(3);

    ViolationReport hot = violation_report(s, RenyiOrder(4.8));
    CHECK(hot.single_copy_certified);
    CHECK(hot.single_copy_min == 1.0);
    CHECK(hot.verdict == Verdict::violated);
    CHECK(hot.joint_entropy > 1.99);
    CHECK(hot.joint_entropy < 2.0);
    CHECK(hot.analytic_joint_bound >= hot.joint_entropy - 1e-9);
    CHECK(hot.lambda_max_exact >= hot.hayden_lambda_bound - 1e-10);

    ViolationReport cold = violation_report(s, RenyiOrder(2.0));
    CHECK(cold.verdict == Verdict::not_violated);
    CHECK(cold.joint_entropy > 2.0);
}

TEST_CASE("violation report at d=8, p=2.5") {
    ViolationReport rep = violation_report(antisymmetric_subspace(8), RenyiOrder(2.5));
    CHECK(rep.verdict == Verdict::violated);
    // Expected values from a 50-digit evaluation of the closed form.
    CHECK(rep.joint_entropy == doctest::Approx(1.9841433013127215).epsilon(1e-12));
    ViolationReport below = violation_report(antisymmetric_subspace(7), RenyiOrder(2.5));
    CHECK(below.verdict == Verdict::not_violated);
    CHECK(below.joint_entropy == doctest::Approx(2.0314019346631113).epsilon(1e-12));
}

TEST_CASE("the d=3 onset sits between p=4.78 and p=4.79") {
    Subspace s = antisymmetric_subspace(3);
    CHECK(violation_report(s, RenyiOrder(4.78)).verdict == Verdict::not_violated);
    CHECK(violation_report(s, RenyiOrder(4.79)).verdict == Verdict::violated);
}

TEST_CASE("non-certified subspaces stay inconclusive") {
    MinimizeOptions opts;
    opts.restarts = 8;
    ViolationReport rep = violation_report(random_subspace(2, 2, 2, 19), RenyiOrder(3.0),
                                           std::nullopt, opts);
    CHECK_FALSE(rep.single_copy_certified);
    CHECK(rep.verdict == Verdict::inconclusive);
}

TEST_CASE("scan finds the documented thresholds") {
    ScanResult hot = scan_violation(RenyiOrder(4.8), 5);
    REQUIRE(hot.minimal_violating_d.has_value());
    CHECK(*hot.minimal_violating_d == 3);

    ScanResult warm = scan_violation(RenyiOrder(2.5), 12);
    REQUIRE(warm.minimal_violating_d.has_value());
    CHECK(*warm.minimal_violating_d == 8);
    // Monotone onset: everything above the threshold violates too. The
    // analytic bound really upper-bounds the exact trial entropy.
    for (const auto& rep : warm.reports) {
        if (rep.d_A >= 8) CHECK(rep.verdict == Verdict::violated);
        if (rep.d_A < 8) CHECK(rep.verdict == Verdict::not_violated);
        CHECK(rep.analytic_joint_bound >= rep.joint_entropy - 1e-9);
    }

    ScanResult cold = scan_violation(RenyiOrder(2.0), 12);
    CHECK_FALSE(cold.minimal_violating_d.has_value());
}
