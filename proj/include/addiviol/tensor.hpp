#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace addiviol {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Tolerances shared across the toolkit. All entropies are in bits (log base 2).
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kProjectorTol = 1e-10;
inline constexpr double kSingularClampTol = 1e-12;  // singular/eigen values below this are zero

// Squared Schmidt coefficients: descending, nonnegative, summing to 1.
// Values clamped to zero (below kSingularClampTol on their native scale)
// are dropped before normalization.
struct SchmidtSpectrum {
    std::vector<double> lambdas;

    double lambda_max() const { return lambdas.empty() ? 0.0 : lambdas.front(); }
    int size() const { return static_cast<int>(lambdas.size()); }

    static SchmidtSpectrum from_singular_values(std::vector<double> sigmas);
    static SchmidtSpectrum from_density_eigenvalues(std::vector<double> evals);
};

// Pure state with an explicit list of tensor-factor dimensions.
// Amplitudes are row-major over the factors: the first factor varies slowest.
struct PureState {
    Vector amps;
    std::vector<int> dims;

    PureState() = default;
    PureState(Vector a, std::vector<int> d);  // checks unit norm and dim product

    int total_dim() const { return static_cast<int>(amps.size()); }
    int factor_count() const { return static_cast<int>(dims.size()); }
};

// Computational basis state |index> in the given factor layout.
PureState basis_state(const std::vector<int>& dims, int index);

Matrix tensor_product(const Matrix& a, const Matrix& b);
PureState tensor_product(const PureState& a, const PureState& b);

// Gather semantics: output factor j is input factor perm[j].
PureState permute_factors(const PureState& v, const std::vector<int>& perm);

// Same reindexing applied to both sides of an operator on the factor space.
Matrix permute_operator_factors(const Matrix& m, const std::vector<int>& dims,
                                const std::vector<int>& perm);

// Traces out the factors not listed in `keep`; kept factors stay in their
// original relative order.
Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep);

// Squared singular values of the state reshaped across the cut
// (left_factors : remaining factors), descending.
SchmidtSpectrum schmidt_spectrum(const PureState& v, const std::vector<int>& left_factors);

// Real eigenvalues of a Hermitian matrix, descending. Throws if the input
// is not Hermitian within tol.
std::vector<double> hermitian_spectrum(const Matrix& m, double tol = 1e-10);

void require_hermitian(const Matrix& m, double tol, const char* what);
void require_projector(const Matrix& m, double tol, const char* what);

// Haar-distributed pure state: normalized vector of iid standard complex
// normals. Deterministic per seed.
PureState haar_random_state(int dim, std::uint64_t seed);

// Haar-distributed unitary via QR of a complex Ginibre matrix.
Matrix haar_random_unitary(int dim, std::uint64_t seed);

}  // namespace addiviol
