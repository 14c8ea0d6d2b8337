#pragma once

#include <cstdint>
#include <utility>

#include "latred/gso.hpp"

namespace latred {

// Evaluated complexity-bound formulas. All logarithms are taken to base
// 1/delta, matching the analysis the counters are compared against.
struct ComplexityBounds {
    double k_minus_bound;   // n(n-1)/2 (log 2n + 1)
    double k_total_bound;   // n(n-1)(log 2n + 1) + n
    double flop_bound_c1;   // 7 n^3 log 2n + 2 n^3
    double flop_bound_c2;   // 3 n^2 [ n(n-1)/2 log 2n + (n-1) ]
    double sr_cost_bound;   // (4/3) n (n-1) (n-2)
};

double log_base_inv_delta(double x, double delta);

// log D = sum_{i=1}^{n-1} (n-i) log ||b_i^||^2. Log domain: D itself
// overflows doubles beyond n ~ 30 for random bases.
double potential_log(const GsoState& s);

// (A, a) = (max_i ||b_i^||^2, min_i ||b_i^||^2).
std::pair<double, double> extremes(const GsoState& s);

// Average-iteration bound n(n-1)(log_{1/delta} 2n + 1) + n.
// Throws InvalidDeltaError for delta outside (1/2, 1); the bound degenerates
// at delta = 1.
double iteration_bound(std::size_t n, double delta);

ComplexityBounds flop_bounds(std::size_t n, double delta);

// Quality figures of a basis plus the bound right-hand sides for one delta.
// Comparisons are left to the caller.
struct BasisQuality {
    double b1_norm;
    double norm_product;
    double det_abs;             // |det B|
    double det_root;            // |det B|^{1/n}
    double b1_det_bound;        // alpha^{(n-1)/4} |det|^{1/n}
    double product_bound;       // alpha^{n(n-1)/4} |det|
    double lambda1_factor;      // alpha^{(n-1)/2}; bound on ||b_1|| is this times lambda_1
    double parallel_b1_bound;   // c^{(n-1)/4} / sqrt(delta) |det|^{1/n}, c = 1/(delta^2(delta-1/2))
};
BasisQuality basis_quality(const ComplexMatrix& b, double delta);

// Exact shortest-vector oracle: exhaustive Gaussian-integer coefficient
// enumeration over the box [-radius, radius]^2 per coordinate with
// partial-norm pruning. Exact at desk scale but exponential in general,
// hence the n <= 4 guard (SearchTooLargeError). The basis should be reduced
// so that the box certainly contains the shortest vector.
double shortest_vector_norm_sq(const ComplexMatrix& reduced_basis, std::int64_t radius = 5);

}  // namespace latred
