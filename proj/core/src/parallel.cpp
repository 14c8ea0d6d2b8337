#include "latred/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "latred/errors.hpp"
#include "latred/metrics.hpp"
#include "latred/realify.hpp"

namespace latred {

namespace {

constexpr double kCheckSlack = 1e-9;

void require_budget(const SuperIterationBudget& budget) {
    if (budget.max_super_iterations < 1)
        throw PreconditionFailedError("super-iteration budget must be >= 1");
}

void record_trace(const GsoState& s, ReductionReport& rep) {
    rep.potential_trace.push_back(potential_log(s));
    const auto [hi, lo] = extremes(s);
    rep.max_gs_trace.push_back(hi);
    rep.min_gs_trace.push_back(lo);
}

}  // namespace

std::uint64_t default_parallel_effective_budget(std::size_t n) {
    return static_cast<std::uint64_t>(
        std::ceil(static_cast<double>(n) * std::log2(static_cast<double>(n) + 1.0)));
}

std::uint64_t default_parallel_deep_budget(std::size_t n) {
    return std::max<std::uint64_t>(1, n);
}

Permutation Permutation::identity(std::size_t n) {
    Permutation p;
    p.source.resize(n);
    std::iota(p.source.begin(), p.source.end(), std::size_t{0});
    return p;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < source.size(); ++i)
        if (source[i] != i) return false;
    return true;
}

ComplexMatrix Permutation::apply(const ComplexMatrix& b) const {
    ComplexMatrix out(b.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto src = b.col(source[j]);
        auto dst = out.col(j);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

GaussianIntegerMatrix Permutation::to_transform() const {
    const std::size_t n = source.size();
    GaussianIntegerMatrix p(n, n);
    for (std::size_t j = 0; j < n; ++j) p(source[j], j) = {1, 0};
    return p;
}

ReductionResult parallel_effective_lll(const ComplexMatrix& b, const ReductionParams& params,
                                       SuperIterationBudget budget) {
    if (!(params.delta > 0.5) || !(params.delta <= 1.0))
        throw InvalidDeltaError("parallel_effective_lll requires delta in (1/2, 1]");
    require_budget(budget);
    const std::size_t n = b.cols();

    ReductionResult res{gso(b), {}};
    GsoState& s = res.state;
    require_well_conditioned(s);
    ReductionReport& rep = res.report;
    record_trace(s, rep);

    for (std::uint64_t sweep = 0; sweep < budget.max_super_iterations; ++sweep) {
        std::uint64_t sweep_swaps = 0;
        for (std::size_t k = 1; k < n; ++k) {
            size_reduce_pair(s, k, k - 1);
            s.flops += kLovaszTestFlops;
            ++rep.iterations;
            if (!lovasz_holds(s, k, params.delta)) {
                ++rep.negative_tests;
                swap_update(s, k);
                ++rep.swaps;
                ++sweep_swaps;
            } else {
                ++rep.positive_tests;
            }
        }
        ++rep.super_iterations;
        record_trace(s, rep);
        if (sweep_swaps == 0) {
            rep.converged_early = true;
            break;
        }
    }
    rep.flops = s.flops;
    rep.transform = s.transform;
    return res;
}

double ratio_v(const GsoState& s, std::size_t prefix, double c) {
    const std::size_t n = s.dim();
    if (prefix < 1 || prefix > n) throw IndexOutOfRangeError("ratio_v: prefix must be in [1, n]");
    if (!(c > 0.0)) throw PreconditionFailedError("ratio_v: c must be positive");
    double log_det = 0.0;
    for (std::size_t j = 0; j < n; ++j) log_det += 0.5 * std::log(s.gs_norms_sq[j]);
    double log_v = 0.0;
    for (std::size_t j = 0; j < prefix; ++j) log_v += std::log(s.gs_norms_sq[j]);
    const double i = static_cast<double>(prefix);
    const double nn = static_cast<double>(n);
    log_v -= i * (nn - i) / 2.0 * std::log(c);
    log_v -= 2.0 * i / nn * log_det;
    return std::exp(log_v);
}

SortedGsoResult sorted_gso(const ComplexMatrix& b, bool joint_size_reduce) {
    if (!b.is_square() || b.empty())
        throw DimensionMismatchError("sorted_gso: basis must be square and nonempty");
    if (!b.all_finite()) throw SingularBasisError("sorted_gso: non-finite entries");
    const std::size_t n = b.cols();

    SortedGsoResult out;
    out.perm = Permutation::identity(n);
    GsoState& s = out.state;
    s.basis = b;
    s.mu = ComplexMatrix::identity(n);
    s.gs_norms_sq.assign(n, 0.0);
    s.gs_vectors = b;  // residuals; column i becomes \hat b_i once selected
    s.transform = GaussianIntegerMatrix::identity(n);

    std::vector<double> resid_norm(n);
    for (std::size_t m = 0; m < n; ++m) {
        resid_norm[m] = norm_sq(s.gs_vectors.col(m));
        s.flops += 2ull * n;
    }

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = i;
        for (std::size_t m = i + 1; m < n; ++m)
            if (resid_norm[m] < resid_norm[k]) k = m;
        if (k != i) {
            s.gs_vectors.swap_cols(i, k);
            s.basis.swap_cols(i, k);
            s.transform.swap_cols(i, k);
            std::swap(resid_norm[i], resid_norm[k]);
            std::swap(out.perm.source[i], out.perm.source[k]);
            for (std::size_t j = 0; j < i; ++j) std::swap(s.mu(i, j), s.mu(k, j));
        }
        // exact norm at selection; the running values are downdated estimates
        s.gs_norms_sq[i] = norm_sq(s.gs_vectors.col(i));
        if (!(s.gs_norms_sq[i] > kGsoNoiseFloorSq * norm_sq(s.basis.col(i))))
            throw SingularBasisError("sorted_gso: basis is numerically singular");

        const auto gi = s.gs_vectors.col(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            auto gj = s.gs_vectors.col(j);
            const Complex mu = inner(gi, std::span<const Complex>(gj)) / s.gs_norms_sq[i];
            for (std::size_t r = 0; r < n; ++r) gj[r] -= mu * gi[r];
            s.flops += 4ull * n;
            resid_norm[j] -= std::norm(mu) * s.gs_norms_sq[i];
            s.flops += 2;

            Complex stored = mu;
            if (joint_size_reduce) {
                const GaussianInteger q = round_gaussian(mu);
                if (!q.is_zero()) {
                    const Complex qc = q.to_complex();
                    auto bj = s.basis.col(j);
                    const auto bi = s.basis.col(i);
                    for (std::size_t r = 0; r < n; ++r) bj[r] -= qc * bi[r];
                    s.transform.sub_scaled_col(j, i, q);
                    for (std::size_t t = 0; t < i; ++t) s.mu(j, t) -= qc * s.mu(i, t);
                    stored -= qc;
                    out.any_rounding = true;
                    s.flops += 2ull * n + 2ull * (i + 1);
                }
            }
            s.mu(j, i) = stored;
        }
    }
    return out;
}

SortedCholeskyResult sorted_cholesky(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatchError("sorted_cholesky: matrix not square");
    const std::size_t n = a.rows();
    ComplexMatrix c = a;
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, c(i, i).real());
    const double tol = 1e-12 * max_diag;

    SortedCholeskyResult out;
    out.perm = Permutation::identity(n);

    for (std::size_t i = 0; i < n; ++i) {
        std::size_t k = i;
        for (std::size_t m = i + 1; m < n; ++m)
            if (c(m, m).real() < c(k, k).real()) k = m;
        if (k != i) {
            // symmetric exchange of i and k; only the lower triangle is
            // maintained, so mirrored entries swap with conjugation
            for (std::size_t t = 0; t < i; ++t) std::swap(c(i, t), c(k, t));
            std::swap(c(i, i), c(k, k));
            for (std::size_t m = i + 1; m < k; ++m) {
                const Complex tmp = c(m, i);
                c(m, i) = std::conj(c(k, m));
                c(k, m) = std::conj(tmp);
            }
            c(k, i) = std::conj(c(k, i));
            for (std::size_t m = k + 1; m < n; ++m) std::swap(c(m, i), c(m, k));
            std::swap(out.perm.source[i], out.perm.source[k]);
        }
        const double pivot = c(i, i).real();
        if (!(pivot > tol))
            throw NotPositiveDefiniteError("sorted_cholesky: pivot not positive");
        const double cii = std::sqrt(pivot);
        c(i, i) = cii;
        out.flops += 1;
        for (std::size_t m = i + 1; m < n; ++m) {
            c(m, i) /= cii;
            out.flops += 1;
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex factor = std::conj(c(j, i));
            for (std::size_t m = j; m < n; ++m) {
                c(m, j) -= c(m, i) * factor;
                out.flops += 2;
            }
        }
    }

    // lower triangle of C is R^H
    out.r = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.r(i, i) = c(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) out.r(i, j) = std::conj(c(j, i));
    }
    return out;
}

namespace {

// Full size-reduction pass on a state (k = 2..n, l = k-1..1 in 1-based
// indexing). Returns true if any coefficient rounded nonzero.
bool size_reduce_basis(GsoState& s) {
    const std::size_t n = s.dim();
    bool any = false;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t l = k; l-- > 0;) {
            if (!size_reduce_pair(s, k, l).is_zero()) any = true;
        }
    }
    return any;
}

}  // namespace

ReductionResult parallel_lll_deep(const ComplexMatrix& b, const ReductionParams& params,
                                  SuperIterationBudget budget) {
    (void)params;  // the reduction notion here is the delta = 1 deep condition
    require_budget(budget);

    SortedGsoResult sg = sorted_gso(b, false);
    ReductionResult res{std::move(sg.state), {}};
    GsoState& s = res.state;
    require_well_conditioned(s);
    ReductionReport& rep = res.report;
    record_trace(s, rep);

    for (std::uint64_t round = 0; round < budget.max_super_iterations; ++round) {
        bool updated = size_reduce_basis(s);

        SortedGsoResult next = sorted_gso(s.basis, false);
        if (!next.perm.is_identity()) updated = true;

        // compose the accumulated transform with the permutation
        GaussianIntegerMatrix composed(s.dim(), s.dim());
        for (std::size_t j = 0; j < s.dim(); ++j)
            for (std::size_t r = 0; r < s.dim(); ++r)
                composed(r, j) = s.transform(r, next.perm.source[j]);
        const std::uint64_t flops_so_far = s.flops;
        s = std::move(next.state);
        s.transform = std::move(composed);
        s.flops += flops_so_far;

        ++rep.super_iterations;
        record_trace(s, rep);
        if (!updated) {
            rep.converged_early = true;
            break;
        }
    }
    rep.flops = s.flops;
    rep.transform = s.transform;
    return res;
}

ReductionResult hybrid_lll_deep(const ComplexMatrix& b, const ReductionParams& params,
                                std::uint64_t parallel_iters) {
    if (parallel_iters == 0) return lll_deep_reduce(b, params);

    ReductionResult pre = parallel_lll_deep(b, params, SuperIterationBudget{parallel_iters});
    ReductionResult fin = lll_deep_reduce(pre.state.basis, params);

    // compose U_total = U_parallel * U_sequential
    const std::size_t n = b.cols();
    GaussianIntegerMatrix composed(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t r = 0; r < n; ++r) {
            GaussianInteger acc{};
            for (std::size_t m = 0; m < n; ++m)
                acc = acc + pre.state.transform(r, m) * fin.state.transform(m, j);
            composed(r, j) = acc;
        }
    fin.state.transform = composed;
    fin.state.flops += pre.state.flops;

    ReductionReport& rep = fin.report;
    rep.super_iterations = pre.report.super_iterations;
    rep.converged_early = pre.report.converged_early;
    rep.iterations += pre.report.iterations;
    rep.positive_tests += pre.report.positive_tests;
    rep.negative_tests += pre.report.negative_tests;
    rep.swaps += pre.report.swaps;
    rep.flops += pre.report.flops;
    rep.potential_trace.insert(rep.potential_trace.begin(), pre.report.potential_trace.begin(),
                               pre.report.potential_trace.end());
    rep.max_gs_trace.insert(rep.max_gs_trace.begin(), pre.report.max_gs_trace.begin(),
                            pre.report.max_gs_trace.end());
    rep.min_gs_trace.insert(rep.min_gs_trace.begin(), pre.report.min_gs_trace.begin(),
                            pre.report.min_gs_trace.end());
    rep.transform = fin.state.transform;
    return fin;
}

Permutation vblast_order(const ComplexMatrix& b) {
    const std::size_t n = b.cols();
    const SortedGsoResult dual = sorted_gso(dual_basis(b), false);
    Permutation out;
    out.source.resize(n);
    for (std::size_t p = 0; p < n; ++p)
        out.source[p] = n - 1 - dual.perm.source[n - 1 - p];
    return out;
}

}  // namespace latred
