#include "addiviol/minentropy.hpp"

#include "addiviol/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace addiviol {

namespace {

constexpr double kEigenFloor = 1e-14;  // floor for lambda^(p-1) / log(lambda)

std::vector<double> output_eigenvalues(const Channel& ch, const Vector& x) {
    Matrix rho = ch.apply_pure(x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    std::vector<double> lam(es.eigenvalues().data(),
                            es.eigenvalues().data() + es.eigenvalues().size());
    for (double& l : lam)
        if (l < 0.0) l = 0.0;
    return lam;
}

double output_entropy(const Channel& ch, const Vector& x, RenyiOrder p, double rank_threshold) {
    return renyi_entropy(output_eigenvalues(ch, x), p, rank_threshold);
}

// Euclidean gradient d S_p / d conj(x); the overall positive scale is
// irrelevant under adaptive step sizes, the sign is not.
Vector entropy_gradient(const Channel& ch, const Vector& x, RenyiOrder p) {
    const double ln2 = std::log(2.0);
    Matrix rho = ch.apply_pure(x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(kEigenFloor);

    Eigen::VectorXd diag;
    double scale = 0.0;
    if (p.is_one()) {
        diag = lam.array().log() + 1.0;
        scale = -1.0 / ln2;
    } else {
        const double pv = p.value();
        diag = lam.array().pow(pv - 1.0);
        double f = es.eigenvalues().cwiseMax(0.0).array().pow(pv).sum();
        scale = pv / ((1.0 - pv) * ln2 * std::max(f, kEigenFloor));
    }
    Matrix weight = es.eigenvectors() * diag.asDiagonal() * es.eigenvectors().adjoint();

    Vector embedded = ch.isometry * x;
    Vector tmp(embedded.size());
    for (int a = 0; a < ch.d_A; ++a)
        tmp.segment(a * ch.d_B, ch.d_B) = weight * embedded.segment(a * ch.d_B, ch.d_B);
    return scale * (ch.isometry.adjoint() * tmp);
}

struct DescentOutcome {
    double value = 0.0;
    Vector x;
    bool converged = false;
};

// Projected gradient descent on the unit input sphere with step halving.
DescentOutcome descend(const Channel& ch, RenyiOrder p, Vector x, const MinimizeOptions& opts) {
    DescentOutcome out;
    double h = output_entropy(ch, x, p, opts.rank_threshold);
    double step = 0.5;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        Vector g = entropy_gradient(ch, x, p);
        Vector tangent = g - x * x.dot(g);
        if (tangent.norm() < 1e-13) {
            out.converged = true;
            break;
        }
        bool improved = false;
        double gain = 0.0;
        while (step >= 1e-14) {
            Vector trial = x - step * tangent;
            trial /= trial.norm();
            double ht = output_entropy(ch, trial, p, opts.rank_threshold);
            if (ht < h - 1e-15) {
                gain = h - ht;
                x = std::move(trial);
                h = ht;
                step = std::min(step * 1.5, 1.0);
                improved = true;
                break;
            }
            step *= 0.5;
        }
        if (!improved || gain < opts.tol) {
            out.converged = true;
            break;
        }
    }
    out.value = h;
    out.x = std::move(x);
    return out;
}

MinEntropyResult finalize(const Channel& ch, RenyiOrder p, Vector argmin, int restarts_used,
                          bool converged, double rank_threshold) {
    MinEntropyResult res;
    res.p = p;
    res.argmin = std::move(argmin);
    res.spectrum_at_argmin =
        SchmidtSpectrum::from_density_eigenvalues(output_eigenvalues(ch, res.argmin));
    res.value = renyi_entropy(res.spectrum_at_argmin, p, rank_threshold);
    res.restarts_used = restarts_used;
    res.converged = converged;
    return res;
}

// Input vector whose embedding is the normalized projection of the witness
// product state onto the subspace.
Vector witness_preimage(const Channel& ch, const OverlapResult& best) {
    Vector product(ch.isometry.rows());
    for (int a = 0; a < ch.d_A; ++a)
        product.segment(a * ch.d_B, ch.d_B) = best.witness_a[a] * best.witness_b;
    Vector x = ch.isometry.adjoint() * product;
    double n = x.norm();
    if (n < 1e-12) throw std::runtime_error("min_output_renyi: degenerate seesaw witness");
    return x / n;
}

MinEntropyResult min_entropy_infinity(const Channel& ch, const MinimizeOptions& opts) {
    SeesawOptions sopts;
    sopts.restarts = opts.restarts;
    sopts.tol = opts.tol;
    sopts.max_iter = opts.max_iter;
    sopts.seed = opts.seed;
    OverlapResult best = max_product_overlap(ch.isometry * ch.isometry.adjoint(), ch.d_A, ch.d_B,
                                             sopts);
    return finalize(ch, RenyiOrder::infinity(), witness_preimage(ch, best), opts.restarts,
                    best.converged, opts.rank_threshold);
}

MinEntropyResult min_entropy_rank(const Channel& ch, const MinimizeOptions& opts) {
    // Rank is discontinuous; scan random inputs plus the optimized inputs
    // found by the smooth p=2 descent and the p=inf seesaw.
    std::vector<Vector> candidates;
    for (int r = 0; r < opts.restarts; ++r)
        candidates.push_back(
            haar_random_state(ch.input_dim(), opts.seed + static_cast<std::uint64_t>(r)).amps);

    MinimizeOptions sub = opts;
    sub.restarts = std::max(4, opts.restarts / 4);
    candidates.push_back(min_output_renyi(ch, RenyiOrder(2.0), sub).argmin);
    candidates.push_back(min_output_renyi(ch, RenyiOrder::infinity(), sub).argmin);

    int best_rank = ch.output_dim() + 1;
    int best_index = -1;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        int r = rank_eps(output_eigenvalues(ch, candidates[i]), opts.rank_threshold);
        if (r < best_rank) {
            best_rank = r;
            best_index = static_cast<int>(i);
        }
    }
    return finalize(ch, RenyiOrder::zero(), candidates[best_index],
                    static_cast<int>(candidates.size()), true, opts.rank_threshold);
}

}  // namespace

MinEntropyResult min_output_renyi(const Channel& ch, RenyiOrder p, const MinimizeOptions& opts) {
    if (p.is_infinity()) return min_entropy_infinity(ch, opts);
    if (p.is_zero()) return min_entropy_rank(ch, opts);

    int restarts = opts.restarts;
    if (p.value() < 1.0) restarts = std::max(restarts, 64);

    MinimizeOptions local = opts;

    // Starting points: Haar inputs, plus (for p < 1) the argmin of a smooth
    // p=2 run, which lands on the right basin when the fractional-power
    // objective has shallow spurious minima.
    std::vector<Vector> starts(restarts);
    for (int r = 0; r < restarts; ++r)
        starts[r] = haar_random_state(ch.input_dim(), opts.seed + static_cast<std::uint64_t>(r)).amps;
    if (p.value() < 1.0 && !p.is_zero()) {
        MinimizeOptions sub = opts;
        sub.restarts = std::max(4, opts.restarts / 4);
        starts[0] = min_output_renyi(ch, RenyiOrder(2.0), sub).argmin;
    }

    std::vector<DescentOutcome> runs(restarts);
    parallel_for(restarts, [&](int r) { runs[r] = descend(ch, p, starts[r], local); });

    int best = 0;
    for (int r = 1; r < restarts; ++r)
        if (runs[r].value < runs[best].value) best = r;
    return finalize(ch, p, runs[best].x, restarts, runs[best].converged, opts.rank_threshold);
}

double antisym_min_entropy_bound(int d, RenyiOrder) {
    if (d < 2) throw std::invalid_argument("antisym_min_entropy_bound: d must be >= 2");
    return 1.0;
}

double vn_violation_condition(int D, int d) {
    if (D < 1) throw std::invalid_argument("vn_violation_condition: D must be >= 1");
    const double dd = static_cast<double>(D) * D;
    if (d < 1 || d > D * D)
        throw std::invalid_argument("vn_violation_condition: need 1 <= d <= D^2");
    const double ratio = d / dd;
    return 2.0 * (1.0 - ratio) * std::log2(static_cast<double>(D)) + binary_entropy(ratio);
}

MinEntropyResult screen_subspace(const Subspace& s, RenyiOrder p, const MinimizeOptions& opts) {
    return min_output_renyi(channel_from_subspace(s), p, opts);
}

}  // namespace addiviol
