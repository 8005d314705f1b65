#include "addiviol/upb.hpp"

#include "addiviol/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace addiviol {

namespace {

constexpr double kLocalRankTol = 1e-9;  // singular value threshold for local ranks

Vector from_reals(std::initializer_list<double> entries) {
    Vector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (double e : entries) v[i++] = e;
    return v;
}

int rank_of_columns(const Matrix& m) {
    if (m.cols() == 0) return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > kLocalRankTol) ++rank;
    return rank;
}

Matrix columns_for_mask(const ProductBasis& pb, std::uint32_t mask, bool a_side) {
    const int dim = a_side ? pb.d_A : pb.d_B;
    Matrix m(dim, __builtin_popcount(mask));
    int col = 0;
    for (int i = 0; i < pb.size(); ++i)
        if (mask & (1u << i)) m.col(col++) = a_side ? pb.members[i].first : pb.members[i].second;
    return m;
}

std::vector<int> mask_to_indices(std::uint32_t mask, int count) {
    std::vector<int> out;
    for (int i = 0; i < count; ++i)
        if (mask & (1u << i)) out.push_back(i);
    return out;
}

}  // namespace

ProductBasis::ProductBasis(int dA, int dB, std::vector<std::pair<Vector, Vector>> m)
    : d_A(dA), d_B(dB), members(std::move(m)) {
    if (d_A < 1 || d_B < 1) throw std::invalid_argument("ProductBasis: dimensions must be >= 1");
    if (members.empty()) throw std::invalid_argument("ProductBasis: no members");
    for (int i = 0; i < size(); ++i) {
        const auto& [a, b] = members[i];
        if (a.size() != d_A || b.size() != d_B)
            throw std::invalid_argument("ProductBasis: member " + std::to_string(i) +
                                        " has wrong local dimension");
        if (std::abs(a.norm() - 1.0) > 1e-10 || std::abs(b.norm() - 1.0) > 1e-10)
            throw std::invalid_argument("ProductBasis: member " + std::to_string(i) +
                                        " is not normalized");
    }
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j) {
            Complex overlap = members[i].first.dot(members[j].first) *
                              members[i].second.dot(members[j].second);
            if (std::abs(overlap) > 1e-10)
                throw std::invalid_argument("ProductBasis: members " + std::to_string(i) + " and " +
                                            std::to_string(j) + " are not orthogonal");
        }
}

Vector ProductBasis::member_vector(int i) const {
    const auto& [a, b] = members.at(i);
    Vector out(static_cast<Eigen::Index>(d_A) * d_B);
    for (int r = 0; r < d_A; ++r) out.segment(static_cast<Eigen::Index>(r) * d_B, d_B) = a[r] * b;
    return out;
}

ProductBasis tiles_upb() {
    const double s = 1.0 / std::sqrt(2.0);
    const double t = 1.0 / std::sqrt(3.0);
    std::vector<std::pair<Vector, Vector>> members;
    members.emplace_back(from_reals({1, 0, 0}), from_reals({s, -s, 0}));
    members.emplace_back(from_reals({0, 0, 1}), from_reals({0, s, -s}));
    members.emplace_back(from_reals({s, -s, 0}), from_reals({0, 0, 1}));
    members.emplace_back(from_reals({0, s, -s}), from_reals({1, 0, 0}));
    members.emplace_back(from_reals({t, t, t}), from_reals({t, t, t}));
    return ProductBasis(3, 3, std::move(members));
}

Subspace span_subspace(const ProductBasis& pb) {
    Matrix basis(static_cast<Eigen::Index>(pb.d_A) * pb.d_B, pb.size());
    for (int i = 0; i < pb.size(); ++i) basis.col(i) = pb.member_vector(i);
    return Subspace(pb.d_A, pb.d_B, std::move(basis));
}

GenericityResult genericity_check(const ProductBasis& pb, int d) {
    if (pb.d_A != d || pb.d_B != d)
        throw std::invalid_argument("genericity_check: local dimensions must equal d");
    if (pb.size() != 2 * (d - 1) + 1)
        throw std::invalid_argument("genericity_check: expected 2(d-1)+1 members, got " +
                                    std::to_string(pb.size()));
    GenericityResult res;
    res.generic = true;
    // All d-subsets, in lexicographic order.
    std::vector<int> subset(d);
    for (int i = 0; i < d; ++i) subset[i] = i;
    while (true) {
        Matrix a(d, d), b(d, d);
        for (int i = 0; i < d; ++i) {
            a.col(i) = pb.members[subset[i]].first;
            b.col(i) = pb.members[subset[i]].second;
        }
        if (rank_of_columns(a) < d || rank_of_columns(b) < d) {
            res.generic = false;
            res.failing_subset = subset;
            return res;
        }
        int pos = d - 1;
        while (pos >= 0 && subset[pos] == pb.size() - d + pos) --pos;
        if (pos < 0) break;
        ++subset[pos];
        for (int i = pos + 1; i < d; ++i) subset[i] = subset[i - 1] + 1;
    }
    return res;
}

std::string to_string(UpbMethod m) {
    return m == UpbMethod::partition_exhaustive ? "partition_exhaustive" : "seesaw_evidence";
}

UpbCertificate is_upb_partition_criterion(const ProductBasis& pb, const SeesawOptions& opts) {
    UpbCertificate cert;
    const int m = pb.size();
    if (m > kPartitionExhaustiveBudget) {
        // Evidence route: unextendible iff the complement of the span holds
        // no product vector.
        cert.method = UpbMethod::seesaw_evidence;
        cert.max_complement_overlap =
            no_product_vector_evidence(complement_subspace(span_subspace(pb)), opts);
        cert.is_unextendible = cert.max_complement_overlap < 1.0 - kSeesawEvidenceTol;
        return cert;
    }

    cert.method = UpbMethod::partition_exhaustive;
    const std::uint32_t total = 1u << m;

    // An extension a (x) b must kill each member on the A or B side; mask =
    // the A-side set. Extension possible iff both local ranks are deficient.
    struct ChunkResult {
        std::int64_t extendible_mask = -1;
        std::uint32_t worst_mask = 0;
        int worst_excess = 1 << 20;
    };
    const std::uint32_t chunk_size = 1u << 14;
    const int chunks = static_cast<int>((total + chunk_size - 1) / chunk_size);
    std::vector<ChunkResult> results(chunks);

    parallel_for(chunks, [&](int c) {
        ChunkResult local;
        const std::uint32_t begin = static_cast<std::uint32_t>(c) * chunk_size;
        const std::uint32_t end = std::min<std::uint64_t>(total, begin + chunk_size);
        for (std::uint32_t mask = begin; mask < end && local.extendible_mask < 0; ++mask) {
            const std::uint32_t comp = (total - 1) ^ mask;
            int rank_a = __builtin_popcount(mask) < pb.d_A
                             ? __builtin_popcount(mask)
                             : rank_of_columns(columns_for_mask(pb, mask, true));
            int rank_b = __builtin_popcount(comp) < pb.d_B
                             ? __builtin_popcount(comp)
                             : rank_of_columns(columns_for_mask(pb, comp, false));
            if (rank_a < pb.d_A && rank_b < pb.d_B) {
                local.extendible_mask = mask;
                break;
            }
            int excess = std::max(rank_a - (pb.d_A - 1), 0) + std::max(rank_b - (pb.d_B - 1), 0);
            if (excess < local.worst_excess) {
                local.worst_excess = excess;
                local.worst_mask = mask;
            }
        }
        results[c] = local;
    });

    std::int64_t extendible = -1;
    std::uint32_t worst_mask = 0;
    int worst_excess = 1 << 20;
    for (const auto& r : results) {
        if (r.extendible_mask >= 0 && (extendible < 0 || r.extendible_mask < extendible))
            extendible = r.extendible_mask;
        if (r.worst_excess < worst_excess) {
            worst_excess = r.worst_excess;
            worst_mask = r.worst_mask;
        }
    }
    if (extendible >= 0) {
        cert.is_unextendible = false;
        cert.extension_partition = mask_to_indices(static_cast<std::uint32_t>(extendible), m);
    } else {
        cert.is_unextendible = true;
        cert.worst_partition = mask_to_indices(worst_mask, m);
    }
    return cert;
}

ProductBasis tensor_upb(const ProductBasis& u1, const ProductBasis& u2) {
    std::vector<std::pair<Vector, Vector>> members;
    members.reserve(static_cast<std::size_t>(u1.size()) * u2.size());
    auto kron_vec = [](const Vector& x, const Vector& y) {
        Vector out(x.size() * y.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x[i] * y;
        return out;
    };
    for (int i = 0; i < u1.size(); ++i)
        for (int j = 0; j < u2.size(); ++j)
            members.emplace_back(kron_vec(u1.members[i].first, u2.members[j].first),
                                 kron_vec(u1.members[i].second, u2.members[j].second));
    return ProductBasis(u1.d_A * u2.d_A, u1.d_B * u2.d_B, std::move(members));
}

double no_product_vector_evidence(const Subspace& s, const SeesawOptions& opts) {
    return max_product_overlap(s.projector(), s.d_A, s.d_B, opts).value;
}

Matrix UpbChannel::apply_pure(const Vector& x) const {
    if (x.size() != in_dim) throw std::invalid_argument("UpbChannel: input dimension mismatch");
    Vector c = a_t * x;  // c_m = a_m^T x
    Matrix out = Matrix::Zero(out_dim, out_dim);
    double total = 0.0;
    for (int m = 0; m < term_count(); ++m) {
        double w = std::norm(c[m]);
        total += w;
        out.noalias() += w * (b.col(m) * b.col(m).adjoint());
    }
    if (total < 1e-300) throw std::runtime_error("UpbChannel: vanishing output");
    return out / total;
}

Matrix UpbChannel::apply(const Matrix& rho) const {
    if (rho.rows() != in_dim || rho.cols() != in_dim)
        throw std::invalid_argument("UpbChannel: input dimension mismatch");
    Matrix out = Matrix::Zero(out_dim, out_dim);
    double total = 0.0;
    for (int m = 0; m < term_count(); ++m) {
        double w = std::real((a_t.row(m) * rho * a_t.row(m).adjoint())(0, 0));
        total += w;
        out.noalias() += w * (b.col(m) * b.col(m).adjoint());
    }
    if (total < 1e-300) throw std::runtime_error("UpbChannel: vanishing output");
    return out / total;
}

UpbChannel channel_from_upb_choi(const ProductBasis& pb) {
    UpbChannel ch;
    ch.in_dim = pb.d_A;
    ch.out_dim = pb.d_B;
    ch.a_t.resize(pb.size(), pb.d_A);
    ch.b.resize(pb.d_B, pb.size());
    for (int i = 0; i < pb.size(); ++i) {
        ch.a_t.row(i) = pb.members[i].first.transpose();
        ch.b.col(i) = pb.members[i].second;
    }
    return ch;
}

UpbChannel tensor_channel(const UpbChannel& c1, const UpbChannel& c2) {
    UpbChannel ch;
    ch.in_dim = c1.in_dim * c2.in_dim;
    ch.out_dim = c1.out_dim * c2.out_dim;
    ch.a_t.resize(c1.term_count() * c2.term_count(), ch.in_dim);
    ch.b.resize(ch.out_dim, c1.term_count() * c2.term_count());
    int m = 0;
    for (int i = 0; i < c1.term_count(); ++i)
        for (int j = 0; j < c2.term_count(); ++j) {
            for (int r = 0; r < c1.in_dim; ++r)
                ch.a_t.row(m).segment(static_cast<Eigen::Index>(r) * c2.in_dim, c2.in_dim) =
                    c1.a_t(i, r) * c2.a_t.row(j);
            for (int r = 0; r < c1.out_dim; ++r)
                ch.b.col(m).segment(static_cast<Eigen::Index>(r) * c2.out_dim, c2.out_dim) =
                    c1.b(r, i) * c2.b.col(j);
            ++m;
        }
    return ch;
}

namespace {

struct RankProbe {
    int rank = 0;
    double min_eigenvalue = 0.0;
};

RankProbe probe_rank(const UpbChannel& ch, const Vector& x, double eps) {
    Matrix rho = ch.apply_pure(x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    RankProbe p;
    p.min_eigenvalue = es.eigenvalues()[0];
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] > eps) ++p.rank;
    return p;
}

// Gradient of the smallest eigenvalue of the normalized output at x.
Vector min_eigenvalue_gradient(const UpbChannel& ch, const Vector& x) {
    Matrix rho = ch.apply_pure(x);
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const double lam_min = es.eigenvalues()[0];
    Vector v = es.eigenvectors().col(0);

    Vector c = ch.a_t * x;
    Vector grad = Vector::Zero(x.size());
    double total = 0.0;
    for (int m = 0; m < ch.term_count(); ++m) total += std::norm(c[m]);
    for (int m = 0; m < ch.term_count(); ++m) {
        double overlap = std::norm(v.dot(ch.b.col(m)));
        grad += (overlap - lam_min) * c[m] * ch.a_t.row(m).conjugate().transpose();
    }
    return grad / total;
}

}  // namespace

RankSearchResult min_output_rank_search(const UpbChannel& ch, const MinimizeOptions& opts) {
    struct RunOutcome {
        int rank = 1 << 20;
        double min_eig = 1.0;
        Vector argmin;
    };
    std::vector<RunOutcome> runs(opts.restarts);

    parallel_for(opts.restarts, [&](int r) {
        RunOutcome out;
        Vector x = haar_random_state(ch.in_dim, opts.seed + static_cast<std::uint64_t>(r)).amps;
        RankProbe probe = probe_rank(ch, x, opts.rank_threshold);
        out.rank = probe.rank;
        out.min_eig = probe.min_eigenvalue;
        out.argmin = x;

        // Descend on the smallest output eigenvalue to hunt rank drops.
        double current = probe.min_eigenvalue;
        double step = 0.5;
        for (int iter = 0; iter < opts.max_iter; ++iter) {
            Vector g = min_eigenvalue_gradient(ch, x);
            Vector tangent = g - x * x.dot(g);
            if (tangent.norm() < 1e-13) break;
            bool improved = false;
            while (step >= 1e-14) {
                Vector trial = x - step * tangent;
                trial /= trial.norm();
                RankProbe pt = probe_rank(ch, trial, opts.rank_threshold);
                if (pt.min_eigenvalue < current - 1e-15) {
                    x = std::move(trial);
                    double gain = current - pt.min_eigenvalue;
                    current = pt.min_eigenvalue;
                    if (pt.rank < out.rank || (pt.rank == out.rank && pt.min_eigenvalue < out.min_eig)) {
                        out.rank = pt.rank;
                        out.min_eig = pt.min_eigenvalue;
                        out.argmin = x;
                    }
                    step = std::min(step * 1.5, 1.0);
                    improved = true;
                    if (gain < opts.tol) improved = false;  // converged
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;
        }
        runs[r] = std::move(out);
    });

    int best = 0;
    for (int r = 1; r < opts.restarts; ++r) {
        if (runs[r].rank < runs[best].rank ||
            (runs[r].rank == runs[best].rank && runs[r].min_eig < runs[best].min_eig))
            best = r;
    }
    RankSearchResult res;
    res.min_rank = runs[best].rank;
    res.min_eigenvalue = runs[best].min_eig;
    res.argmin = runs[best].argmin;
    res.s0 = std::log2(static_cast<double>(res.min_rank));
    return res;
}

P0AdditivityReport p0_additivity_report(const ProductBasis& pb, const SeesawOptions& seesaw,
                                        const MinimizeOptions& minimize, int random_inputs) {
    P0AdditivityReport rep;
    rep.certificate = is_upb_partition_criterion(pb, seesaw);
    rep.declined = !rep.certificate.is_unextendible;  // not a UPB: the p=0 argument does not apply

    if (pb.d_A == pb.d_B && pb.size() == 2 * (pb.d_A - 1) + 1) {
        rep.genericity_applicable = true;
        rep.genericity = genericity_check(pb, pb.d_A);
    }

    rep.complement_overlap = no_product_vector_evidence(complement_subspace(span_subspace(pb)), seesaw);

    UpbChannel single = channel_from_upb_choi(pb);
    rep.random_output_min_rank = single.out_dim + 1;
    rep.random_output_min_eigenvalue = 1.0;
    for (int i = 0; i < random_inputs; ++i) {
        Vector x = haar_random_state(single.in_dim,
                                     minimize.seed + 1000 + static_cast<std::uint64_t>(i))
                       .amps;
        Matrix rho = single.apply_pure(x);
        Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
        int rank = 0;
        for (Eigen::Index j = 0; j < es.eigenvalues().size(); ++j)
            if (es.eigenvalues()[j] > minimize.rank_threshold) ++rank;
        rep.random_output_min_rank = std::min(rep.random_output_min_rank, rank);
        rep.random_output_min_eigenvalue =
            std::min(rep.random_output_min_eigenvalue, es.eigenvalues()[0]);
    }

    if (rep.declined) return rep;  // single-copy evidence still reported above

    ProductBasis two = tensor_upb(pb, pb);
    rep.tensor_complement_overlap =
        no_product_vector_evidence(complement_subspace(span_subspace(two)), seesaw);
    rep.two_copy_rank = min_output_rank_search(tensor_channel(single, single), minimize);
    rep.s0_two_copy_estimate = rep.two_copy_rank.s0;

    rep.additive_evidence = rep.complement_overlap < 1.0 - 1e-3 &&
                            rep.random_output_min_rank == single.out_dim &&
                            rep.random_output_min_eigenvalue > 1e-6 &&
                            rep.tensor_complement_overlap < 1.0 - kSeesawEvidenceTol &&
                            rep.two_copy_rank.min_rank == single.out_dim * single.out_dim;
    return rep;
}

}  // namespace addiviol
