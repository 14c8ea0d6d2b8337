#pragma once

#include <cstdint>
#include <vector>

#include "latred/complex_matrix.hpp"

namespace latred {

// Gram-Schmidt state shared by all reduction algorithms.
//
// Invariants maintained by the operations in this library:
//   - mu is lower triangular with unit diagonal,
//     mu(i,j) = <\hat b_j, b_i> / ||\hat b_j||^2, so B = \hat B * mu^T;
//   - gs_norms_sq[i] = ||\hat b_i||^2 > 0;
//   - basis = original basis * transform, with |det transform| = 1.
//
// `flops` is a semantic counter that follows the complex flop accounting of
// the reduction algorithms (one unit per complex multiply or add in the
// counted operations), not a hardware counter.
struct GsoState {
    ComplexMatrix basis;
    ComplexMatrix mu;
    std::vector<double> gs_norms_sq;
    ComplexMatrix gs_vectors;  // \hat B; may be left empty by some producers
    GaussianIntegerMatrix transform;
    std::uint64_t flops = 0;

    std::size_t dim() const { return basis.cols(); }
    bool has_gs_vectors() const { return !gs_vectors.empty(); }
};

// Input-conditioning threshold used by the reduction entry points:
// a basis is rejected when some ||b_i^||^2 <= 1e-12 ||b_i||^2.
double singularity_tolerance(double column_norm_sq);

// Rank-deficiency floor used inside gso itself. Effective LLL lets
// non-consecutive coefficients grow, so intermediate bases can legitimately
// cancel ~12 digits in a projection; only cancellation all the way down to
// rounding noise indicates an actually dependent column.
inline constexpr double kGsoNoiseFloorSq = 1e-24;

// Modified Gram-Schmidt orthogonalization of a square nonsingular basis.
// Populates gs_vectors and charges 2n^3 flops. Throws SingularBasisError if a
// Gram-Schmidt norm falls below the singularity tolerance.
GsoState gso(const ComplexMatrix& b);

// Upper-triangular R of the QR decomposition: r_ii = ||\hat b_i||,
// r_ij = mu(j,i) * r_ii for j > i.
ComplexMatrix r_factor(const GsoState& state);

// Cholesky factor of a Hermitian positive definite A: upper-triangular R with
// positive real diagonal and R^H R = A. Throws NotPositiveDefiniteError.
ComplexMatrix cholesky(const ComplexMatrix& a);

}  // namespace latred
