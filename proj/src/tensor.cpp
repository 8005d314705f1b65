#include "addiviol/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace addiviol {

namespace {

std::int64_t dim_product(const std::vector<int>& dims) {
    std::int64_t p = 1;
    for (int d : dims) {
        if (d < 1) throw std::invalid_argument("factor dimensions must be >= 1");
        p *= d;
    }
    return p;
}

// Row-major strides: stride[i] = prod(dims[i+1..]).
std::vector<std::int64_t> strides_of(const std::vector<int>& dims) {
    std::vector<std::int64_t> s(dims.size(), 1);
    for (int i = static_cast<int>(dims.size()) - 2; i >= 0; --i)
        s[i] = s[i + 1] * dims[i + 1];
    return s;
}

}  // namespace

SchmidtSpectrum SchmidtSpectrum::from_singular_values(std::vector<double> sigmas) {
    std::vector<double> lam;
    lam.reserve(sigmas.size());
    for (double s : sigmas) {
        if (s < kSingularClampTol) continue;
        lam.push_back(s * s);
    }
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    double total = std::accumulate(lam.begin(), lam.end(), 0.0);
    if (total <= 0.0) throw std::runtime_error("Schmidt spectrum is identically zero");
    for (double& l : lam) l /= total;
    return SchmidtSpectrum{std::move(lam)};
}

SchmidtSpectrum SchmidtSpectrum::from_density_eigenvalues(std::vector<double> evals) {
    std::vector<double> lam;
    lam.reserve(evals.size());
    for (double e : evals) {
        if (e < -1e-9) throw std::runtime_error("density spectrum has a negative eigenvalue");
        if (e < kSingularClampTol) continue;
        lam.push_back(e);
    }
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    double total = std::accumulate(lam.begin(), lam.end(), 0.0);
    if (total <= 0.0) throw std::runtime_error("density spectrum is identically zero");
    for (double& l : lam) l /= total;
    return SchmidtSpectrum{std::move(lam)};
}

PureState::PureState(Vector a, std::vector<int> d) : amps(std::move(a)), dims(std::move(d)) {
    if (dim_product(dims) != amps.size())
        throw std::invalid_argument("factor dimensions do not match amplitude count");
    double n = amps.norm();
    if (std::abs(n - 1.0) > 1e-12)
        throw std::invalid_argument("pure state is not normalized");
}

PureState basis_state(const std::vector<int>& dims, int index) {
    std::int64_t total = dim_product(dims);
    if (index < 0 || index >= total) throw std::invalid_argument("basis index out of range");
    Vector v = Vector::Zero(total);
    v[index] = 1.0;
    return PureState(std::move(v), dims);
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

PureState tensor_product(const PureState& a, const PureState& b) {
    Vector out(a.amps.size() * b.amps.size());
    for (Eigen::Index i = 0; i < a.amps.size(); ++i)
        out.segment(i * b.amps.size(), b.amps.size()) = a.amps[i] * b.amps;
    std::vector<int> dims = a.dims;
    dims.insert(dims.end(), b.dims.begin(), b.dims.end());
    return PureState(std::move(out), std::move(dims));
}

PureState permute_factors(const PureState& v, const std::vector<int>& perm) {
    const int m = v.factor_count();
    if (static_cast<int>(perm.size()) != m)
        throw std::invalid_argument("permutation length does not match factor count");
    std::vector<bool> seen(m, false);
    for (int p : perm) {
        if (p < 0 || p >= m || seen[p]) throw std::invalid_argument("not a permutation");
        seen[p] = true;
    }

    std::vector<int> out_dims(m);
    for (int j = 0; j < m; ++j) out_dims[j] = v.dims[perm[j]];
    auto in_strides = strides_of(v.dims);

    // Walk output indices with an odometer; maintain the matching input
    // linear index incrementally.
    Vector out(v.amps.size());
    std::vector<int> digit(m, 0);
    std::int64_t in_index = 0;
    const std::int64_t total = v.amps.size();
    for (std::int64_t oi = 0; oi < total; ++oi) {
        out[oi] = v.amps[in_index];
        for (int j = m - 1; j >= 0; --j) {
            if (++digit[j] < out_dims[j]) {
                in_index += in_strides[perm[j]];
                break;
            }
            digit[j] = 0;
            in_index -= in_strides[perm[j]] * (out_dims[j] - 1);
        }
    }
    return PureState(std::move(out), std::move(out_dims));
}

Matrix permute_operator_factors(const Matrix& m, const std::vector<int>& dims,
                                const std::vector<int>& perm) {
    std::int64_t total = dim_product(dims);
    if (m.rows() != total || m.cols() != total)
        throw std::invalid_argument("permute_operator_factors: size mismatch");
    const int nf = static_cast<int>(dims.size());
    if (static_cast<int>(perm.size()) != nf)
        throw std::invalid_argument("permute_operator_factors: permutation length mismatch");

    std::vector<int> out_dims(nf);
    for (int j = 0; j < nf; ++j) out_dims[j] = dims[perm[j]];
    auto in_strides = strides_of(dims);

    std::vector<std::int64_t> map(total);
    std::vector<int> digit(nf, 0);
    std::int64_t in_index = 0;
    for (std::int64_t oi = 0; oi < total; ++oi) {
        map[oi] = in_index;
        for (int j = nf - 1; j >= 0; --j) {
            if (++digit[j] < out_dims[j]) {
                in_index += in_strides[perm[j]];
                break;
            }
            digit[j] = 0;
            in_index -= in_strides[perm[j]] * (out_dims[j] - 1);
        }
    }
    Matrix out(total, total);
    for (std::int64_t r = 0; r < total; ++r)
        for (std::int64_t c = 0; c < total; ++c) out(r, c) = m(map[r], map[c]);
    return out;
}

Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
    std::int64_t total = dim_product(dims);
    if (rho.rows() != rho.cols() || rho.rows() != total)
        throw std::invalid_argument("partial_trace: matrix size does not match factor dims");

    const int m = static_cast<int>(dims.size());
    std::vector<bool> kept(m, false);
    for (int f : keep) {
        if (f < 0 || f >= m || kept[f]) throw std::invalid_argument("partial_trace: bad keep set");
        kept[f] = true;
    }

    std::vector<int> keep_dims, trace_dims;
    std::vector<std::int64_t> keep_strides, trace_strides;
    auto strides = strides_of(dims);
    for (int f = 0; f < m; ++f) {
        if (kept[f]) {
            keep_dims.push_back(dims[f]);
            keep_strides.push_back(strides[f]);
        } else {
            trace_dims.push_back(dims[f]);
            trace_strides.push_back(strides[f]);
        }
    }
    std::int64_t keep_total = dim_product(keep_dims);
    std::int64_t trace_total = dim_product(trace_dims);

    // Enumerate linear offsets of each side against the full index.
    auto offsets = [](const std::vector<int>& ds, const std::vector<std::int64_t>& ss,
                      std::int64_t count) {
        std::vector<std::int64_t> off(count, 0);
        std::vector<int> digit(ds.size(), 0);
        std::int64_t cur = 0;
        for (std::int64_t i = 0; i < count; ++i) {
            off[i] = cur;
            for (int j = static_cast<int>(ds.size()) - 1; j >= 0; --j) {
                if (++digit[j] < ds[j]) {
                    cur += ss[j];
                    break;
                }
                digit[j] = 0;
                cur -= ss[j] * (ds[j] - 1);
            }
        }
        return off;
    };
    auto keep_off = offsets(keep_dims, keep_strides, keep_total);
    auto trace_off = offsets(trace_dims, trace_strides, trace_total);

    Matrix out = Matrix::Zero(keep_total, keep_total);
    for (std::int64_t r = 0; r < keep_total; ++r)
        for (std::int64_t c = 0; c < keep_total; ++c) {
            Complex acc = 0.0;
            for (std::int64_t t = 0; t < trace_total; ++t)
                acc += rho(keep_off[r] + trace_off[t], keep_off[c] + trace_off[t]);
            out(r, c) = acc;
        }
    return out;
}

SchmidtSpectrum schmidt_spectrum(const PureState& v, const std::vector<int>& left_factors) {
    const int m = v.factor_count();
    std::vector<bool> is_left(m, false);
    for (int f : left_factors) {
        if (f < 0 || f >= m || is_left[f])
            throw std::invalid_argument("schmidt_spectrum: bad cut");
        is_left[f] = true;
    }
    std::vector<int> perm;
    perm.reserve(m);
    for (int f = 0; f < m; ++f)
        if (is_left[f]) perm.push_back(f);
    const int left_count = static_cast<int>(perm.size());
    for (int f = 0; f < m; ++f)
        if (!is_left[f]) perm.push_back(f);
    if (left_count == 0 || left_count == m)
        throw std::invalid_argument("schmidt_spectrum: cut side is empty");

    PureState grouped = permute_factors(v, perm);
    std::int64_t rows = 1, cols = 1;
    for (int j = 0; j < left_count; ++j) rows *= grouped.dims[j];
    for (int j = left_count; j < m; ++j) cols *= grouped.dims[j];

    // Row-major reshape: the permuted amplitude vector is the cut matrix.
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        mat(grouped.amps.data(), rows, cols);

    // Hermitian and anti-Hermitian reshapes (conjugate-pair states of
    // real-symmetric projectors, odd/even copy embeddings) admit
    // |eigenvalue| = singular value, much cheaper than an SVD at size ~1000.
    if (rows == cols && rows > 64) {
        auto abs_eigenvalues = [](const Matrix& h) {
            Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
            std::vector<double> sig(es.eigenvalues().size());
            for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
                sig[i] = std::abs(es.eigenvalues()[i]);
            return sig;
        };
        if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() < 1e-13)
            return SchmidtSpectrum::from_singular_values(abs_eigenvalues(mat));
        if ((mat + mat.adjoint()).cwiseAbs().maxCoeff() < 1e-13)
            return SchmidtSpectrum::from_singular_values(
                abs_eigenvalues(Complex(0, -1) * mat));
    }

    Eigen::VectorXd sv;
    if (std::min(rows, cols) <= 48) {
        Eigen::JacobiSVD<Matrix> svd(mat);
        sv = svd.singularValues();
    } else {
        Eigen::BDCSVD<Matrix> svd(mat);
        sv = svd.singularValues();
    }
    return SchmidtSpectrum::from_singular_values(
        std::vector<double>(sv.data(), sv.data() + sv.size()));
}

void require_hermitian(const Matrix& m, double tol, const char* what) {
    if (m.rows() != m.cols()) throw std::invalid_argument(std::string(what) + ": not square");
    double err = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (err > tol)
        throw std::invalid_argument(std::string(what) + ": not Hermitian (max deviation " +
                                    std::to_string(err) + ")");
}

void require_projector(const Matrix& m, double tol, const char* what) {
    require_hermitian(m, std::max(tol, kHermitianTol), what);
    double err = (m * m - m).cwiseAbs().maxCoeff();
    if (err > tol)
        throw std::invalid_argument(std::string(what) + ": not idempotent (max deviation " +
                                    std::to_string(err) + ")");
}

std::vector<double> hermitian_spectrum(const Matrix& m, double tol) {
    require_hermitian(m, tol, "hermitian_spectrum");
    Matrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
    std::vector<double> out(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        out[i] = es.eigenvalues()[es.eigenvalues().size() - 1 - i];
    return out;
}

PureState haar_random_state(int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("haar_random_state: dim must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (int i = 0; i < dim; ++i) {
        double re = gauss(rng);
        double im = gauss(rng);
        v[i] = Complex(re, im);
    }
    v /= v.norm();
    return PureState(std::move(v), {dim});
}

Matrix haar_random_unitary(int dim, std::uint64_t seed) {
    if (dim < 1) throw std::invalid_argument("haar_random_unitary: dim must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the phase ambiguity so the distribution is exactly Haar.
    for (int j = 0; j < dim; ++j) {
        Complex d = r(j, j);
        if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
    }
    return q;
}

}  // namespace addiviol
