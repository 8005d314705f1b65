#include "addiviol/multicopy.hpp"

#include "addiviol/subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace addiviol {

namespace {

constexpr std::int64_t kDeskStateLimit = 10'000'000;   // amplitudes without --large
constexpr std::int64_t kDeskMatrixLimit = 10'000'000;  // projector entries without --large
constexpr std::int64_t kHardStateLimit = 200'000'000;

int pair_count(int d) { return d * (d - 1) / 2; }

// Mode product: applies op (out_dim x in_dim) to one factor of a dense
// tensor, reshaping (pre, in_dim, post) -> (pre, out_dim, post).
void apply_to_factor(Vector& amps, std::vector<int>& dims, int factor, const Matrix& op) {
    const int in_dim = dims[factor];
    if (op.cols() != in_dim) throw std::invalid_argument("apply_to_factor: dimension mismatch");
    const int out_dim = static_cast<int>(op.rows());
    std::int64_t pre = 1, post = 1;
    for (int f = 0; f < factor; ++f) pre *= dims[f];
    for (std::size_t f = factor + 1; f < dims.size(); ++f) post *= dims[f];

    using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Vector out(pre * out_dim * post);
    for (std::int64_t i = 0; i < pre; ++i) {
        Eigen::Map<const RowMat> in_block(amps.data() + i * in_dim * post, in_dim, post);
        Eigen::Map<RowMat> out_block(out.data() + i * out_dim * post, out_dim, post);
        out_block.noalias() = op * in_block;
    }
    amps = std::move(out);
    dims[factor] = out_dim;
}

void check_state_budget(std::int64_t amplitudes, bool large_ok, const char* what) {
    if (amplitudes > kHardStateLimit)
        throw std::invalid_argument(std::string(what) +
                                    ": state exceeds the hard size limit of 2e8 amplitudes");
    if (amplitudes > kDeskStateLimit && !large_ok)
        throw std::invalid_argument(
            std::string(what) + ": state needs " + std::to_string(amplitudes) +
            " amplitudes (> 1e7); pass --large to run this configuration");
}

}  // namespace

std::string to_string(MultiCopyInput kind) {
    switch (kind) {
        case MultiCopyInput::totally_antisymmetric: return "totally_antisymmetric";
        case MultiCopyInput::pairing: return "pairing";
        case MultiCopyInput::optimized: return "optimized";
    }
    return "optimized";
}

PureState totally_antisymmetric_input(int k) {
    if (k < 1) throw std::invalid_argument("totally_antisymmetric_input: k must be >= 1");
    std::int64_t total = 1;
    for (int i = 0; i < k; ++i) {
        total *= k;
        if (total > kHardStateLimit)
            throw std::invalid_argument("totally_antisymmetric_input: k too large");
    }
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    const double amp = 1.0 / std::sqrt(kfact);

    Vector v = Vector::Zero(total);
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inversions;
        std::int64_t index = 0;
        for (int i = 0; i < k; ++i) index = index * k + perm[i];
        v[index] = (inversions % 2 == 0) ? amp : -amp;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return PureState(std::move(v), std::vector<int>(k, k));
}

PureState pairing_input(int d, int n) {
    if (d < 2) throw std::invalid_argument("pairing_input: d must be >= 2");
    if (n < 1) throw std::invalid_argument("pairing_input: n must be >= 1");
    const int k = pair_count(d);

    Vector pair = Vector::Zero(static_cast<Eigen::Index>(k) * k);
    for (int i = 0; i < k; ++i) pair[static_cast<Eigen::Index>(i) * k + i] = 1.0;
    pair /= std::sqrt(static_cast<double>(k));
    PureState entangled_pair(std::move(pair), {k, k});

    PureState state = (n >= 2) ? entangled_pair : basis_state({k}, 0);
    for (int c = 3; c + 1 <= n; c += 2) state = tensor_product(state, entangled_pair);
    if (n >= 3 && n % 2 == 1) state = tensor_product(state, basis_state({k}, 0));
    return state;
}

MultiCopyResult multicopy_output_entropy(int d, int n, const PureState& input, RenyiOrder p,
                                         bool large_ok) {
    if (d < 2 || n < 1) throw std::invalid_argument("multicopy_output_entropy: need d >= 2, n >= 1");
    const int k = pair_count(d);
    if (input.factor_count() != n)
        throw std::invalid_argument("multicopy_output_entropy: input must have n factors");
    for (int dim : input.dims)
        if (dim != k)
            throw std::invalid_argument(
                "multicopy_output_entropy: input factors must have dimension d(d-1)/2");

    std::int64_t total = 1;
    for (int c = 0; c < n; ++c) total *= static_cast<std::int64_t>(d) * d;
    check_state_budget(total, large_ok, "multicopy_output_entropy");

    const Matrix isometry = antisymmetric_subspace(d).basis;
    Vector amps = input.amps;
    std::vector<int> dims = input.dims;
    for (int c = 0; c < n; ++c) apply_to_factor(amps, dims, c, isometry);
    amps /= amps.norm();  // embedding is isometric; absorb accumulated rounding

    // Split each embedded copy (dim d^2) into its A and B factors.
    std::vector<int> split_dims(2 * n, d);
    PureState embedded(std::move(amps), split_dims);
    std::vector<int> a_factors;
    for (int c = 0; c < n; ++c) a_factors.push_back(2 * c);

    MultiCopyResult res;
    res.d = d;
    res.n = n;
    res.p = p;
    res.spectrum = schmidt_spectrum(embedded, a_factors);
    res.entropy = renyi_entropy(res.spectrum, p);
    res.single_copy_sum = static_cast<double>(n);
    return res;
}

MultiCopyResult multicopy_min_search(int d, int n, const SeesawOptions& opts, bool large_ok) {
    if (d < 2 || n < 1) throw std::invalid_argument("multicopy_min_search: need d >= 2, n >= 1");
    std::int64_t total = 1;
    for (int c = 0; c < n; ++c) total *= static_cast<std::int64_t>(d) * d;
    check_state_budget(total, large_ok, "multicopy_min_search");
    if (total * total > kDeskMatrixLimit && !large_ok)
        throw std::invalid_argument("multicopy_min_search: projector needs " +
                                    std::to_string(total * total) +
                                    " entries (> 1e7); pass --large to run this configuration");

    Matrix p_single = antisymmetric_subspace(d).projector();
    Matrix projector = p_single;
    for (int c = 1; c < n; ++c) projector = tensor_product(projector, p_single);

    std::vector<int> side_dims(n, d);
    OverlapResult best = multipartite_max_product_overlap(projector, side_dims, side_dims, opts);

    // Witness product state on the grouped cut -> n-copy input state.
    Vector grouped(best.witness_a.size() * best.witness_b.size());
    for (Eigen::Index i = 0; i < best.witness_a.size(); ++i)
        grouped.segment(i * best.witness_b.size(), best.witness_b.size()) =
            best.witness_a[i] * best.witness_b;
    PureState witness(std::move(grouped), std::vector<int>(2 * n, d));
    std::vector<int> to_copy_order(2 * n);
    for (int c = 0; c < n; ++c) {
        to_copy_order[2 * c] = c;          // A_c sits at grouped position c
        to_copy_order[2 * c + 1] = n + c;  // B_c sits at grouped position n+c
    }
    witness = permute_factors(witness, to_copy_order);

    const Matrix unembed = antisymmetric_subspace(d).basis.adjoint();
    Vector amps = witness.amps;
    std::vector<int> dims(n, d * d);
    for (int c = 0; c < n; ++c) apply_to_factor(amps, dims, c, unembed);
    double norm = amps.norm();
    if (norm < 1e-12) throw std::runtime_error("multicopy_min_search: degenerate witness");
    amps /= norm;

    MultiCopyResult res = multicopy_output_entropy(d, n, PureState(std::move(amps), dims),
                                                   RenyiOrder::infinity(), large_ok);
    res.input_kind = MultiCopyInput::optimized;
    res.converged = best.converged;
    return res;
}

}  // namespace addiviol
