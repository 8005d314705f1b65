#include "addiviol/maxoverlap.hpp"

#include "addiviol/parallel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace addiviol {

namespace {

// (I (x) <b|) P (I (x) |b>)
Matrix contract_side_b(const Matrix& p, int d_A, int d_B, const Vector& b) {
    Matrix m(d_A, d_A);
    for (int a = 0; a < d_A; ++a)
        for (int a2 = 0; a2 < d_A; ++a2)
            m(a, a2) = b.dot(p.block(a * d_B, a2 * d_B, d_B, d_B) * b);
    return m;
}

// (<a| (x) I) P (|a> (x) I)
Matrix contract_side_a(const Matrix& p, int d_A, int d_B, const Vector& a) {
    Matrix m = Matrix::Zero(d_B, d_B);
    for (int i = 0; i < d_A; ++i)
        for (int j = 0; j < d_A; ++j)
            m += std::conj(a[i]) * a[j] * p.block(i * d_B, j * d_B, d_B, d_B);
    return m;
}

// Top eigenvector; on a near-degenerate top eigenvalue (gap < 1e-12) the
// projection of the previous iterate onto the leading eigenspace is used,
// which keeps converged runs stationary.
Vector top_eigenvector(const Matrix& m, const Vector& previous, double& top_value) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
    const auto& vals = es.eigenvalues();
    const Eigen::Index n = vals.size();
    top_value = vals[n - 1];
    Eigen::Index first = n - 1;
    while (first > 0 && top_value - vals[first - 1] < 1e-12) --first;
    if (first == n - 1 || previous.size() != m.rows()) return es.eigenvectors().col(n - 1);
    Matrix basis = es.eigenvectors().rightCols(n - first);
    Vector projected = basis * (basis.adjoint() * previous);
    double norm = projected.norm();
    if (norm < 1e-8) return es.eigenvectors().col(n - 1);
    return projected / norm;
}

std::pair<Vector, Vector> random_product_start(int d_A, int d_B, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector a(d_A), b(d_B);
    for (int i = 0; i < d_A; ++i) a[i] = Complex(gauss(rng), gauss(rng));
    for (int i = 0; i < d_B; ++i) b[i] = Complex(gauss(rng), gauss(rng));
    a /= a.norm();
    b /= b.norm();
    return {a, b};
}

}  // namespace

OverlapResult seesaw_product_overlap_once(const Matrix& p, int d_A, int d_B,
                                          std::uint64_t seed, const SeesawOptions& opts) {
    OverlapResult res;
    auto [a, b] = random_product_start(d_A, d_B, seed);
    double value = std::real(a.dot(contract_side_b(p, d_A, d_B, b) * a));
    for (int iter = 1; iter <= opts.max_iter; ++iter) {
        double after_a = 0.0, after_b = 0.0;
        a = top_eigenvector(contract_side_b(p, d_A, d_B, b), a, after_a);
        if (opts.record_trace) res.trace.push_back({after_a, a, b});
        b = top_eigenvector(contract_side_a(p, d_A, d_B, a), b, after_b);
        if (opts.record_trace) res.trace.push_back({after_b, a, b});
        res.iterations = iter;
        bool done = after_b - value < opts.tol;
        value = after_b;  // objective at the current witnesses
        if (done) {
            res.converged = true;
            break;
        }
    }
    res.value = value;
    res.witness_a = a;
    res.witness_b = b;
    return res;
}

OverlapResult max_product_overlap(const Matrix& p, int d_A, int d_B, const SeesawOptions& opts) {
    if (p.rows() != static_cast<Eigen::Index>(d_A) * d_B || p.rows() != p.cols())
        throw std::invalid_argument("max_product_overlap: projector size mismatch");
    require_projector(p, kProjectorTol, "max_product_overlap");
    if (opts.restarts < 1) throw std::invalid_argument("max_product_overlap: restarts must be >= 1");

    std::vector<OverlapResult> runs(opts.restarts);
    parallel_for(opts.restarts, [&](int r) {
        runs[r] = seesaw_product_overlap_once(p, d_A, d_B, opts.seed + static_cast<std::uint64_t>(r),
                                              opts);
    });
    int best = 0;
    for (int r = 1; r < opts.restarts; ++r)
        if (runs[r].value > runs[best].value) best = r;
    OverlapResult res = std::move(runs[best]);
    res.best_restart = best;
    return res;
}

double average_product_overlap(const Matrix& p, int d_A, int d_B) {
    if (p.rows() != static_cast<Eigen::Index>(d_A) * d_B || p.rows() != p.cols())
        throw std::invalid_argument("average_product_overlap: projector size mismatch");
    require_projector(p, kProjectorTol, "average_product_overlap");
    return std::real(p.trace()) / (static_cast<double>(d_A) * d_B);
}

OverlapResult subspace_lambda_max(const Subspace& s, const SeesawOptions& opts) {
    return max_product_overlap(s.projector(), s.d_A, s.d_B, opts);
}

OverlapResult multipartite_max_product_overlap(const Matrix& p, const std::vector<int>& dims_a,
                                               const std::vector<int>& dims_b,
                                               const SeesawOptions& opts) {
    if (dims_a.empty() || dims_a.size() != dims_b.size())
        throw std::invalid_argument("multipartite_max_product_overlap: need one a,b pair per copy");
    const int n = static_cast<int>(dims_a.size());
    std::vector<int> interleaved;
    std::int64_t total_a = 1, total_b = 1;
    for (int i = 0; i < n; ++i) {
        interleaved.push_back(dims_a[i]);
        interleaved.push_back(dims_b[i]);
        total_a *= dims_a[i];
        total_b *= dims_b[i];
    }
    if (p.rows() != total_a * total_b || p.rows() != p.cols())
        throw std::invalid_argument("multipartite_max_product_overlap: projector size mismatch");
    if (n == 1) return max_product_overlap(p, dims_a[0], dims_b[0], opts);

    std::vector<int> group;  // all a factors, then all b factors
    for (int i = 0; i < n; ++i) group.push_back(2 * i);
    for (int i = 0; i < n; ++i) group.push_back(2 * i + 1);
    Matrix grouped = permute_operator_factors(p, interleaved, group);
    return max_product_overlap(grouped, static_cast<int>(total_a), static_cast<int>(total_b), opts);
}

}  // namespace addiviol
