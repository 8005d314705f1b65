#pragma once

#include "addiviol/maxoverlap.hpp"
#include "addiviol/minentropy.hpp"
#include "addiviol/subspace.hpp"
#include "addiviol/tensor.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace addiviol {

// Mutually orthogonal product states a_i (x) b_i on C^{d_A} (x) C^{d_B}.
struct ProductBasis {
    int d_A = 0;
    int d_B = 0;
    std::vector<std::pair<Vector, Vector>> members;

    ProductBasis() = default;
    ProductBasis(int dA, int dB, std::vector<std::pair<Vector, Vector>> m);

    int size() const { return static_cast<int>(members.size()); }
    Vector member_vector(int i) const;  // a_i (x) b_i
};

// The five-state tiles basis on 3x3.
ProductBasis tiles_upb();

// Orthonormal span of the members as a Subspace.
Subspace span_subspace(const ProductBasis& pb);

struct GenericityResult {
    bool generic = false;
    std::vector<int> failing_subset;  // first d-subset with a rank-deficient side
};

// Exhaustively checks that every d-subset of the 2(d-1)+1 members has full
// local rank on both sides (singular values above 1e-9).
GenericityResult genericity_check(const ProductBasis& pb, int d);

enum class UpbMethod { partition_exhaustive, seesaw_evidence };

std::string to_string(UpbMethod m);

struct UpbCertificate {
    bool is_unextendible = false;
    UpbMethod method = UpbMethod::partition_exhaustive;
    // Exhaustive branch: the witness partition (indices killed on the A side)
    // when extendible, else the partition that came closest to extension.
    std::optional<std::vector<int>> extension_partition;
    std::vector<int> worst_partition;
    // Seesaw branch: maximum product overlap with the complement projector.
    double max_complement_overlap = 0.0;
};

inline constexpr int kPartitionExhaustiveBudget = 22;
inline constexpr double kSeesawEvidenceTol = 1e-4;

// Bennett partition criterion: the set is unextendible iff no bipartition
// leaves both sides with deficient local rank. Exhaustive up to 22 members
// (2^22 bipartitions); larger sets fall back to seesaw evidence on the
// complement of the span.
UpbCertificate is_upb_partition_criterion(const ProductBasis& pb, const SeesawOptions& opts = {});

// All pairwise products (a_i (x) a_j', b_i (x) b_j').
ProductBasis tensor_upb(const ProductBasis& u1, const ProductBasis& u2);

// Maximum product overlap with the projector onto s; values bounded away
// from 1 are numerical evidence (not proof) that s has no product vector.
double no_product_vector_evidence(const Subspace& s, const SeesawOptions& opts = {});

// Entanglement-breaking map recovered from the UPB Choi projector:
// rho -> sum_i <a_i*|rho|a_i*> |b_i><b_i|, normalized to unit trace
// (the raw map need not be trace preserving; rank statements are
// normalization invariant).
struct UpbChannel {
    int in_dim = 0;
    int out_dim = 0;
    Matrix a_t;  // row m = a_m^T, so weights are |a_t.row(m) x|^2
    Matrix b;    // column m = b_m (unit)

    int term_count() const { return static_cast<int>(a_t.rows()); }
    Matrix apply_pure(const Vector& x) const;
    Matrix apply(const Matrix& rho) const;
};

UpbChannel channel_from_upb_choi(const ProductBasis& pb);
UpbChannel tensor_channel(const UpbChannel& c1, const UpbChannel& c2);

struct RankSearchResult {
    int min_rank = 0;
    double min_eigenvalue = 0.0;  // smallest output eigenvalue encountered
    Vector argmin;
    double s0 = 0.0;  // log2(min_rank)
};

// Adversarial minimum output rank: gradient descent on the smallest output
// eigenvalue over unit inputs, plus Haar-random probes.
RankSearchResult min_output_rank_search(const UpbChannel& ch, const MinimizeOptions& opts = {});

struct P0AdditivityReport {
    bool declined = false;  // set when the partition criterion fails
    UpbCertificate certificate;
    bool genericity_applicable = false;  // requires 2(d-1)+1 members on d x d
    GenericityResult genericity;
    double complement_overlap = 0.0;         // single-copy span complement
    int random_output_min_rank = 0;          // over random single-copy inputs
    double random_output_min_eigenvalue = 0.0;
    double tensor_complement_overlap = 0.0;  // two-copy span complement
    RankSearchResult two_copy_rank;
    double s0_two_copy_estimate = 0.0;
    bool additive_evidence = false;
};

// Bundles the full p=0 additivity evidence pipeline for a product basis.
P0AdditivityReport p0_additivity_report(const ProductBasis& pb, const SeesawOptions& seesaw = {},
                                        const MinimizeOptions& minimize = {},
                                        int random_inputs = 200);

}  // namespace addiviol
