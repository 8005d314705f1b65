#include "addiviol/subspace.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace addiviol {

Subspace::Subspace(int dA, int dB, Matrix b) : d_A(dA), d_B(dB), basis(std::move(b)) {
    if (d_A < 1 || d_B < 1) throw std::invalid_argument("Subspace: dimensions must be >= 1");
    if (basis.rows() != static_cast<Eigen::Index>(d_A) * d_B)
        throw std::invalid_argument("Subspace: basis rows do not match d_A*d_B");
    if (basis.cols() < 1 || basis.cols() > basis.rows())
        throw std::invalid_argument("Subspace: need 1 <= k <= d_A*d_B");
    Matrix gram = basis.adjoint() * basis;
    double err = (gram - Matrix::Identity(basis.cols(), basis.cols())).cwiseAbs().maxCoeff();
    if (err > 1e-10)
        throw std::invalid_argument("Subspace: basis is not orthonormal (deviation " +
                                    std::to_string(err) + ")");
}

Matrix swap_operator(int d) {
    if (d < 1) throw std::invalid_argument("swap_operator: d must be >= 1");
    Matrix v = Matrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v(j * d + i, i * d + j) = 1.0;
    return v;
}

Subspace antisymmetric_subspace(int d) {
    if (d < 2) throw std::invalid_argument("antisymmetric_subspace: d must be >= 2");
    const int k = d * (d - 1) / 2;
    Matrix basis = Matrix::Zero(d * d, k);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    int col = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            basis(i * d + j, col) = inv_sqrt2;
            basis(j * d + i, col) = -inv_sqrt2;
            ++col;
        }
    return Subspace(d, d, std::move(basis));
}

bool is_antisymmetric(const Subspace& s, double tol) {
    if (s.d_A != s.d_B) return false;
    const int d = s.d_A;
    if (s.k() != d * (d - 1) / 2) return false;
    Matrix expected = 0.5 * (Matrix::Identity(d * d, d * d) - swap_operator(d));
    return (s.projector() - expected).cwiseAbs().maxCoeff() <= tol;
}

Subspace parthasarathy_subspace(int d) {
    if (d < 2) throw std::invalid_argument("parthasarathy_subspace: d must be >= 2");
    const int nodes = 2 * d - 1;
    Matrix span(d * d, nodes);
    for (int j = 0; j < nodes; ++j) {
        double lambda = static_cast<double>(j - d);  // distinct reals, well conditioned
        Eigen::VectorXd v(d);
        double x = 1.0;
        for (int i = 0; i < d; ++i) {
            v[i] = x;
            x *= lambda;
        }
        v /= v.norm();
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b) span(a * d + b, j) = v[a] * v[b];
    }
    // Complement of the span via full SVD; the span has full column rank
    // (Vandermonde in lambda), so the complement dimension is (d-1)^2.
    Eigen::JacobiSVD<Matrix> svd(span, Eigen::ComputeFullU);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > 1e-10 * svd.singularValues()[0]) ++rank;
    if (rank != nodes)
        throw std::runtime_error("parthasarathy_subspace: node family is rank deficient");
    Matrix comp = svd.matrixU().rightCols(d * d - rank);
    Subspace out(d, d, std::move(comp));
    if (out.k() != (d - 1) * (d - 1))
        throw std::runtime_error("parthasarathy_subspace: unexpected complement dimension");
    return out;
}

Subspace conjugate_subspace(const Subspace& s) {
    return Subspace(s.d_A, s.d_B, s.basis.conjugate());
}

Subspace complement_subspace(const Subspace& s) {
    const int n = s.ambient_dim();
    if (s.k() == n) throw std::invalid_argument("complement_subspace: complement is empty");
    Eigen::JacobiSVD<Matrix> svd(s.basis, Eigen::ComputeFullU);
    Matrix comp = svd.matrixU().rightCols(n - s.k());
    return Subspace(s.d_A, s.d_B, std::move(comp));
}

Subspace random_subspace(int d_A, int d_B, int k, std::uint64_t seed) {
    const int n = d_A * d_B;
    if (k < 1 || k > n) throw std::invalid_argument("random_subspace: need 1 <= k <= d_A*d_B");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(n, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < k; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, k);
    return Subspace(d_A, d_B, std::move(q));
}

Channel::Channel(const Subspace& s) : isometry(s.basis), d_A(s.d_A), d_B(s.d_B) {
    Matrix gram = isometry.adjoint() * isometry;
    double err = (gram - Matrix::Identity(isometry.cols(), isometry.cols())).cwiseAbs().maxCoeff();
    if (err > 1e-10) throw std::invalid_argument("Channel: embedding is not an isometry");
}

Matrix Channel::apply_pure(const Vector& input) const {
    if (input.size() != isometry.cols())
        throw std::invalid_argument("Channel: input dimension mismatch");
    Vector embedded = isometry * input;
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        y(embedded.data(), d_A, d_B);
    // Tr_A(|y><y|) with |y> reshaped as Y[a,b].
    return y.transpose() * y.conjugate();
}

Matrix Channel::apply(const Matrix& rho_in) const {
    if (rho_in.rows() != isometry.cols() || rho_in.cols() != isometry.cols())
        throw std::invalid_argument("Channel: input density matrix dimension mismatch");
    Matrix out = Matrix::Zero(d_B, d_B);
    for (const Matrix& kraus : kraus_operators()) out += kraus * rho_in * kraus.adjoint();
    return out;
}

std::vector<Matrix> Channel::kraus_operators() const {
    std::vector<Matrix> ops;
    ops.reserve(d_A);
    for (int a = 0; a < d_A; ++a) ops.push_back(isometry.middleRows(a * d_B, d_B));
    return ops;
}

Channel channel_from_subspace(const Subspace& s) { return Channel(s); }

Matrix werner_holevo_apply(const Matrix& rho, int d) {
    if (d < 2) throw std::invalid_argument("werner_holevo_apply: d must be >= 2");
    if (rho.rows() != d || rho.cols() != d)
        throw std::invalid_argument("werner_holevo_apply: input must be d x d");
    return (rho.trace() * Matrix::Identity(d, d) - rho.transpose()) / (d - 1.0);
}

}  // namespace addiviol
