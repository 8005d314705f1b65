#pragma once

#include "addiviol/tensor.hpp"

#include <cstdint>

namespace addiviol {

// A k-dimensional subspace of C^{d_A} (x) C^{d_B}, held as an orthonormal
// basis of column vectors in the standard product ordering |a,b> = a*d_B + b.
struct Subspace {
    int d_A = 0;
    int d_B = 0;
    Matrix basis;  // (d_A*d_B) x k, basis^dag basis = I

    Subspace() = default;
    Subspace(int dA, int dB, Matrix b);

    int k() const { return static_cast<int>(basis.cols()); }
    int ambient_dim() const { return d_A * d_B; }
    Matrix projector() const { return basis * basis.adjoint(); }
};

// Swap V|ij> = |ji> on C^d (x) C^d.
Matrix swap_operator(int d);

// span{ (|ij> - |ji>)/sqrt(2) : i < j }, dimension d(d-1)/2.
Subspace antisymmetric_subspace(int d);

// True when s is exactly the antisymmetric subspace of C^d (x) C^d,
// i.e. its projector equals (I - V)/2 within tol.
bool is_antisymmetric(const Subspace& s, double tol = 1e-10);

// Completely entangled subspace of dimension (d-1)^2: the orthogonal
// complement of span{ v_l (x) v_l } over 2d-1 distinct real nodes l,
// with v_l = (1, l, ..., l^{d-1}) normalized.
Subspace parthasarathy_subspace(int d);

// Entrywise complex conjugation of the basis (standard product basis).
Subspace conjugate_subspace(const Subspace& s);

// Orthogonal complement within the same ambient space.
Subspace complement_subspace(const Subspace& s);

// Haar-random k-dimensional subspace (QR of a Ginibre block).
Subspace random_subspace(int d_A, int d_B, int k, std::uint64_t seed);

// Channel in the Stinespring picture: isometric embedding of C^k into
// C^{d_A * d_B} followed by tracing out the A factor.
struct Channel {
    Matrix isometry;  // (d_A*d_B) x k
    int d_A = 0;
    int d_B = 0;

    explicit Channel(const Subspace& s);

    int input_dim() const { return static_cast<int>(isometry.cols()); }
    int output_dim() const { return d_B; }

    Matrix apply_pure(const Vector& input) const;   // Tr_A of the embedded pure state
    Matrix apply(const Matrix& rho_in) const;       // general inputs via Kraus form
    std::vector<Matrix> kraus_operators() const;    // K_a[b,i] = W[(a,b),i]
};

Channel channel_from_subspace(const Subspace& s);

// (Tr(rho) I - rho^T) / (d - 1).
Matrix werner_holevo_apply(const Matrix& rho, int d);

}  // namespace addiviol
