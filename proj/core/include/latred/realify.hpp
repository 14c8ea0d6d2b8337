#pragma once

#include "latred/complex_matrix.hpp"

namespace latred {

// Approximation-factor constants for one delta.
// alpha >= beta^2 for delta in (1/2, 1], with equality iff delta = 3/4.
struct ApproxFactors {
    double alpha;      // 1/(delta - 1/2), complex LLL
    double beta;       // 1/(delta - 1/4), real LLL
    double c_complex;  // 1/(delta^2 (delta - 1/2)), parallel effective bound
    double c_real;     // 1/(delta^2 (delta - 1/4))
};
ApproxFactors approx_factors(double delta);

// Entry-wise realification: each entry b expands to the 2x2 block
// [[Re b, -Im b], [Im b, Re b]]; an n x n complex basis becomes a 2n x 2n
// real one. |det F(B)| = |det B|^2, and Gram-Schmidt structure is preserved.
// Real matrices are returned as ComplexMatrix with zero imaginary parts;
// real LLL is the complex algorithm on real-entried input.
ComplexMatrix realify_local(const ComplexMatrix& b);

// Block realification [[Re B, -Im B], [Im B, Re B]]. Generates the same real
// lattice as realify_local up to column permutation, but the block structure
// says little about reducedness.
ComplexMatrix realify_block(const ComplexMatrix& b);

// Dual basis B* = (B^{-1})^H J with J the column-reversing matrix.
// Gram-Schmidt norms satisfy ||b_i^|| = 1 / ||b*_{n-i+1}^||.
ComplexMatrix dual_basis(const ComplexMatrix& b);

// For a complex-LLL-reduced B (precondition, PreconditionFailedError
// otherwise), checks that realify_local(B) is real-LLL-reduced with
// parameter delta - 1/4. Guaranteed true; this exists to test the guarantee.
bool check_reducedness_transfer(const ComplexMatrix& b, double delta);

}  // namespace latred
