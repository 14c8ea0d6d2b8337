#pragma once

#include <cstdint>
#include <vector>

#include "latred/reduction.hpp"

namespace latred {

// Fixed number of super-iterations for the parallel algorithms.
struct SuperIterationBudget {
    std::uint64_t max_super_iterations = 1;
};

// Default budgets: ceil(n log2(n+1)) sweeps for parallel effective LLL,
// n rounds for parallel LLL-deep.
std::uint64_t default_parallel_effective_budget(std::size_t n);
std::uint64_t default_parallel_deep_budget(std::size_t n);

// Column permutation; output position i takes input column source[i].
struct Permutation {
    std::vector<std::size_t> source;

    static Permutation identity(std::size_t n);
    bool is_identity() const;
    std::size_t size() const { return source.size(); }
    ComplexMatrix apply(const ComplexMatrix& b) const;
    GaussianIntegerMatrix to_transform() const;
};

// One sweep of k = 2..n (monotone, k never decreases): pairwise size
// reduction then conditional swap. Sweeps repeat until the budget is spent or
// a full sweep performs no swap, which sets report.converged_early; a
// converged output is effectively LLL-reduced.
ReductionResult parallel_effective_lll(const ComplexMatrix& b, const ReductionParams& params,
                                       SuperIterationBudget budget);

// Convergence diagnostic v(i) = prod_{j<=i} ||b_j^||^2 /
// (c^{i(n-i)/2} |det L|^{2i/n}) for prefix length i in [1, n]. At convergence
// of parallel effective LLL, max_i v(i) <= 1/delta.
double ratio_v(const GsoState& s, std::size_t prefix, double c);

struct SortedGsoResult {
    Permutation perm;
    GsoState state;
    bool any_rounding = false;  // joint mode: some size-reduction coefficient rounded nonzero
};

// Modified GSO with pivoting: at each step the remaining column with the
// minimum projected norm is selected (ties: lowest current index). With
// joint_size_reduce, basis columns are also updated by b_j -= round(mu) b_i
// as the coefficients are produced.
SortedGsoResult sorted_gso(const ComplexMatrix& b, bool joint_size_reduce = false);

struct SortedCholeskyResult {
    Permutation perm;
    ComplexMatrix r;  // upper triangular, R^H R = P^T A P
    std::uint64_t flops = 0;
};

// Cholesky with symmetric min-diagonal pivoting on the updated matrix.
// Matches sorted_gso on the Gram matrix: same permutation, same R factor.
// Costs about n^3/3 flops against roughly 2n^3 for sorted GSO.
SortedCholeskyResult sorted_cholesky(const ComplexMatrix& a);

// Alternates {size reduction of the full basis; sorted GSO} after one initial
// sorted GSO, until a round makes no update (permutation identity and all
// rounded coefficients zero) or the budget is spent. A converged output
// satisfies the deep-reduced conditions with delta = 1. budget = 1 is the
// first-order pass equivalent to the DOLLAR detector.
ReductionResult parallel_lll_deep(const ComplexMatrix& b, const ReductionParams& params,
                                  SuperIterationBudget budget);

// parallel_lll_deep for parallel_iters rounds, then sequential LLL-deep to
// completion. parallel_iters = 0 is exactly lll_deep_reduce.
ReductionResult hybrid_lll_deep(const ComplexMatrix& b, const ReductionParams& params,
                                std::uint64_t parallel_iters = 2);

// Ordering that maximizes min_i ||b_i^|| over all column permutations,
// computed as sorted GSO on the dual basis with index reversal.
Permutation vblast_order(const ComplexMatrix& b);

}  // namespace latred
