#include "addiviol/tensor.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>

using namespace addiviol;

namespace {

Matrix pauli_x() {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

PureState bell_pair() {
    Vector v(4);
    v << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    return PureState(v, {2, 2});
}

PureState singlet() {
    Vector v(4);
    v << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
    return PureState(v, {2, 2});
}

}  // namespace

TEST_CASE("tensor product of identities") {
    Matrix id2 = Matrix::Identity(2, 2);
    CHECK((tensor_product(id2, id2) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("tensor product of basis states") {
    PureState v = tensor_product(basis_state({2}, 0), basis_state({2}, 1));
    CHECK(v.dims == std::vector<int>{2, 2});
    CHECK(v.amps[1] == Complex(1.0, 0.0));
    CHECK(v.amps.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("mixed products reduce to the joint operator") {
    // (X (x) I)(I (x) X) = X (x) X, checked by direct multiplication.
    Matrix x = pauli_x();
    Matrix id2 = Matrix::Identity(2, 2);
    Matrix lhs = tensor_product(x, id2) * tensor_product(id2, x);
    Matrix rhs = tensor_product(x, x);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("identity permutation is a no-op") {
    PureState v = haar_random_state(12, 7);
    PureState w(v.amps, {3, 2, 2});
    PureState out = permute_factors(w, {0, 1, 2});
    CHECK((out.amps - w.amps).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("factor swap moves basis labels") {
    PureState v = basis_state({2, 2}, 1);  // |01>
    PureState out = permute_factors(v, {1, 0});
    CHECK(out.amps[2] == Complex(1.0, 0.0));  // |10>
}

TEST_CASE("permutation then inverse is the identity") {
    PureState v = haar_random_state(24, 3);
    PureState w(v.amps, {2, 3, 2, 2});
    std::vector<int> perm{2, 0, 3, 1};
    std::vector<int> inverse(perm.size());
    for (int i = 0; i < 4; ++i) inverse[perm[i]] = i;
    PureState round = permute_factors(permute_factors(w, perm), inverse);
    CHECK((round.amps - w.amps).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("regrouped double Bell pair has a flat length-4 spectrum") {
    PureState two_pairs = tensor_product(bell_pair(), bell_pair());
    PureState regrouped = permute_factors(two_pairs, {0, 2, 1, 3});

    // Oracle: direct SVD of the amplitude matrix across (first two : last two).
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        mat(regrouped.amps.data(), 4, 4);
    Eigen::JacobiSVD<Matrix> svd(mat);

    SchmidtSpectrum spec = schmidt_spectrum(regrouped, {0, 1});
    REQUIRE(spec.size() == 4);
    for (int i = 0; i < 4; ++i) {
        CHECK(spec.lambdas[i] == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(spec.lambdas[i] ==
              doctest::Approx(svd.singularValues()[i] * svd.singularValues()[i]).epsilon(1e-10));
    }
}

TEST_CASE("partial trace of a Bell pair is maximally mixed") {
    PureState phi = bell_pair();
    Matrix rho = phi.amps * phi.amps.adjoint();
    Matrix reduced = partial_trace(rho, {2, 2}, {1});
    CHECK((reduced - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial trace of a product factorizes") {
    PureState a = haar_random_state(3, 11);
    PureState b = haar_random_state(4, 12);
    Matrix rho = a.amps * a.amps.adjoint();
    Matrix sigma = b.amps * b.amps.adjoint();
    Matrix joint = tensor_product(rho, sigma);
    Matrix reduced = partial_trace(joint, {3, 4}, {0});
    CHECK((reduced - rho * sigma.trace()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("partial trace of the singlet is diag(1/2, 1/2)") {
    PureState s = singlet();
    Matrix rho = s.amps * s.amps.adjoint();
    Matrix reduced = partial_trace(rho, {2, 2}, {1});
    CHECK((reduced - 0.5 * Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("partial trace preserves the trace") {
    PureState v = haar_random_state(24, 21);
    Matrix rho = v.amps * v.amps.adjoint();
    Matrix reduced = partial_trace(rho, {2, 3, 4}, {0, 2});
    CHECK(std::abs(reduced.trace() - rho.trace()) < 1e-12);
    CHECK((reduced - reduced.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("Schmidt spectrum of a product state is {1}") {
    PureState v = tensor_product(basis_state({2}, 0), basis_state({2}, 0));
    SchmidtSpectrum spec = schmidt_spectrum(v, {0});
    REQUIRE(spec.size() == 1);
    CHECK(spec.lambdas[0] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Schmidt spectrum of the singlet is {1/2, 1/2}") {
    SchmidtSpectrum spec = schmidt_spectrum(singlet(), {0});
    REQUIRE(spec.size() == 2);
    CHECK(spec.lambdas[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(spec.lambdas[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("hermitian spectrum basics") {
    std::vector<double> id_spec = hermitian_spectrum(Matrix::Identity(5, 5));
    for (double v : id_spec) CHECK(v == doctest::Approx(1.0));

    // Swap on 2x2: eigenvalues {1,1,1,-1}.
    Matrix v(4, 4);
    v.setZero();
    v(0, 0) = v(3, 3) = 1;
    v(1, 2) = v(2, 1) = 1;
    auto spec = hermitian_spectrum(v);
    CHECK(spec[0] == doctest::Approx(1.0));
    CHECK(spec[2] == doctest::Approx(1.0));
    CHECK(spec[3] == doctest::Approx(-1.0));

    Matrix bad(2, 2);
    bad << 0, 1, 0, 0;
    CHECK_THROWS_AS(hermitian_spectrum(bad), std::invalid_argument);
}

TEST_CASE("hermitian spectrum sums to the trace") {
    PureState v = haar_random_state(36, 5);
    Matrix m = v.amps * v.amps.adjoint() + 0.25 * Matrix::Identity(36, 36);
    auto spec = hermitian_spectrum(m);
    double sum = 0.0;
    for (double x : spec) sum += x;
    CHECK(sum == doctest::Approx(std::real(m.trace())).epsilon(1e-10));
}

TEST_CASE("haar sampling is deterministic and normalized") {
    PureState one = haar_random_state(1, 99);
    CHECK(one.amps.size() == 1);
    CHECK(std::abs(one.amps[0]) == doctest::Approx(1.0));

    PureState a = haar_random_state(6, 42);
    PureState b = haar_random_state(6, 42);
    CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() == 0.0);
    CHECK(a.amps.norm() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(haar_random_state(0, 1), std::invalid_argument);
}

TEST_CASE("haar first-moment matches 1/dim") {
    // E |<0|psi>|^2 = 1/dim for Haar states.
    const int samples = 100000;
    double mean = 0.0;
    for (int i = 0; i < samples; ++i) mean += std::norm(haar_random_state(4, 1000 + i).amps[0]);
    mean /= samples;
    CHECK(std::abs(mean - 0.25) < 0.005);
}

TEST_CASE("haar unitaries are unitary and deterministic") {
    Matrix u = haar_random_unitary(5, 17);
    CHECK((u.adjoint() * u - Matrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-12);
    Matrix v = haar_random_unitary(5, 17);
    CHECK((u - v).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pure state validation") {
    Vector bad(3);
    bad << 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(PureState(bad, {3}), std::invalid_argument);
    CHECK_THROWS_AS(PureState(Vector::Ones(4) / 2.0, {3}), std::invalid_argument);
    CHECK_THROWS_AS(permute_factors(basis_state({2, 2}, 0), {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_spectrum(basis_state({2, 2}, 0), {}), std::invalid_argument);
    CHECK_THROWS_AS(schmidt_spectrum(basis_state({2, 2}, 0), {0, 1}), std::invalid_argument);
}
