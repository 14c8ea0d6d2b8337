#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "latred/gso.hpp"

namespace latred {

enum class Variant { Standard, Effective, Deep };

struct ReductionParams {
    double delta = 0.75;  // admissible range (1/2, 1]
    std::optional<std::uint64_t> max_iterations;
    Variant variant = Variant::Standard;
};

// Safety-net iteration caps used when max_iterations is not set:
// 100 n^2 log2(n+1) for Standard/Effective, ten times that for Deep.
std::uint64_t default_iteration_cap(std::size_t n, Variant variant);

// Input gate shared by the reduction algorithms: throws SingularBasisError
// when some ||b_i^||^2 <= 1e-12 ||b_i||^2.
void require_well_conditioned(const GsoState& s);

// Counters and traces for one reduction run.
//
// iterations = positive_tests + negative_tests (one per Lovasz or deep test).
// potential_trace holds the log-domain potential log D = sum (n-i) log||b_i^||^2,
// recorded after the initial GSO and after every swap or insertion; for the
// parallel algorithms it is recorded per super-iteration instead.
// max_gs_trace / min_gs_trace record max_i ||b_i^||^2 and min_i ||b_i^||^2 at
// the same points.
struct ReductionReport {
    std::uint64_t iterations = 0;
    std::uint64_t positive_tests = 0;
    std::uint64_t negative_tests = 0;
    std::uint64_t swaps = 0;
    std::uint64_t flops = 0;
    std::uint64_t full_size_reduction_flops = 0;
    std::vector<double> potential_trace;
    std::vector<double> max_gs_trace;
    std::vector<double> min_gs_trace;
    GaussianIntegerMatrix transform;
    std::uint64_t super_iterations = 0;
    bool converged_early = false;
};

struct ReductionResult {
    GsoState state;
    ReductionReport report;

    const ComplexMatrix& basis() const { return state.basis; }
};

// --- primitives (0-based indices) ---------------------------------------

// Pairwise size reduction of b_k against b_l (l < k). Triggers when
// |Re mu(k,l)| >= 1/2 or |Im mu(k,l)| >= 1/2; afterwards both parts are
// within [-1/2, 1/2]. Gram-Schmidt vectors and norms are unchanged.
// Charges 2n + 2(l+1) flops when triggered. Returns the subtracted rounding
// coefficient (zero when nothing was done).
GaussianInteger size_reduce_pair(GsoState& s, std::size_t k, std::size_t l);

// Lovasz test at position k (>= 1):
//   ||b_k^||^2 + |mu(k,k-1)|^2 ||b_{k-1}^||^2 >= delta ||b_{k-1}^||^2,
// evaluated with an absolute slack of 1e-12 ||b_{k-1}^||^2 so floating-point
// ties cannot produce infinite swap loops. Pure; the 3-flop charge of the
// test is applied by the calling loop.
bool lovasz_holds(const GsoState& s, std::size_t k, double delta);

// Swaps columns k-1 and k of basis and transform and updates mu, norms and
// Gram-Schmidt vectors with the standard O(n) formulas.
// Charges 6(n-k-1)+7 flops (6(n-k)+7 in 1-based indexing).
void swap_update(GsoState& s, std::size_t k);

static constexpr std::uint64_t kLovaszTestFlops = 3;

// --- algorithms -----------------------------------------------------------

// Standard LLL. Output satisfies the size-reduced and Lovasz conditions for
// params.delta; output basis = input * report.transform.
ReductionResult lll_reduce(const ComplexMatrix& b, const ReductionParams& params = {});

// Effective LLL: size reduction only for consecutive pairs. Performs exactly
// the same swap sequence as lll_reduce and yields the same Gram-Schmidt
// vectors.
ReductionResult effective_lll_reduce(const ComplexMatrix& b, const ReductionParams& params = {});

// Turns an effectively reduced state into a fully size-reduced one by running
// pairwise size reductions with l = k-2 down to 1 for each k = 3..n (1-based).
// Lovasz conditions are untouched; added flops are bounded by
// (4/3) n(n-1)(n-2). Throws NotEffectivelyReducedError if the precondition
// fails. When `report` is given, flop deltas are accumulated into it.
void finalize_full_size_reduction(GsoState& s, ReductionReport* report = nullptr);

// LLL with deep insertions (unbounded window). The deep test uses
// sum_{j=i..k} |mu(k,j)|^2 ||b_j^||^2 < delta ||b_i^||^2 with the smallest
// violating i; after insertion the GSO of columns i..n is recomputed from
// scratch. Worst case is exponential, so the iteration cap matters here.
ReductionResult lll_deep_reduce(const ComplexMatrix& b, const ReductionParams& params = {});

// --- reducedness checkers (recompute GSO from scratch, 1e-9 slack) --------

enum class Notion { Lll, Effective, Deep };

struct ConditionViolation {
    enum class Kind { None, SizeReduction, Lovasz, DeepSorting };
    Kind kind = Kind::None;
    std::size_t row = 0;  // vector index k of the violated condition (0-based)
    std::size_t col = 0;  // second index (j for size reduction, i for deep)
};

struct CheckResult {
    bool reduced = true;
    std::vector<ConditionViolation> violations;
};

CheckResult check_reduced(const ComplexMatrix& b, double delta, Notion notion);

bool is_lll_reduced(const ComplexMatrix& b, double delta);
bool is_effectively_reduced(const ComplexMatrix& b, double delta);
bool is_deep_reduced(const ComplexMatrix& b, double delta);

}  // namespace latred
