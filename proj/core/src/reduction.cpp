#include "latred/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "latred/errors.hpp"
#include "latred/metrics.hpp"

namespace latred {

namespace {

constexpr double kLovaszSlack = 1e-12;
constexpr double kCheckSlack = 1e-9;

void require_delta(double delta) {
    if (!(delta > 0.5) || !(delta <= 1.0))
        throw InvalidDeltaError("reduction requires delta in (1/2, 1]");
}

void record_trace(const GsoState& s, ReductionReport& rep) {
    rep.potential_trace.push_back(potential_log(s));
    const auto [hi, lo] = extremes(s);
    rep.max_gs_trace.push_back(hi);
    rep.min_gs_trace.push_back(lo);
}

// Recomputes the GSO of columns `first`..n-1 in place; columns before `first`
// (and their Gram-Schmidt vectors) are taken as-is.
void recompute_gso_tail(GsoState& s, std::size_t first) {
    const std::size_t n = s.dim();
    std::vector<Complex> v(n);
    std::uint64_t pairs = 0;
    for (std::size_t m = first; m < n; ++m) {
        const auto bm = s.basis.col(m);
        std::copy(bm.begin(), bm.end(), v.begin());
        for (std::size_t j = 0; j < m; ++j) {
            const auto gj = s.gs_vectors.col(j);
            const Complex mu = inner(gj, std::span<const Complex>(v)) / s.gs_norms_sq[j];
            for (std::size_t r = 0; r < n; ++r) v[r] -= mu * gj[r];
            s.mu(m, j) = mu;
            ++pairs;
        }
        s.mu(m, m) = 1.0;
        s.gs_norms_sq[m] = norm_sq(v);
        if (!(s.gs_norms_sq[m] > kGsoNoiseFloorSq * norm_sq(bm)))
            throw SingularBasisError("deep insertion: basis became numerically singular");
        auto gm = s.gs_vectors.col(m);
        std::copy(v.begin(), v.end(), gm.begin());
    }
    s.flops += 4ull * n * pairs;
}

void deep_insert(GsoState& s, std::size_t i, std::size_t k) {
    s.basis.rotate_col_into(i, k);
    s.transform.rotate_col_into(i, k);
    recompute_gso_tail(s, i);
}

}  // namespace

void require_well_conditioned(const GsoState& s) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
        if (!(s.gs_norms_sq[i] > singularity_tolerance(norm_sq(s.basis.col(i)))))
            throw SingularBasisError("input basis is numerically singular");
    }
}

std::uint64_t default_iteration_cap(std::size_t n, Variant variant) {
    const double base =
        100.0 * static_cast<double>(n) * static_cast<double>(n) * std::log2(n + 1.0);
    const double cap = (variant == Variant::Deep) ? 10.0 * base : base;
    return std::max<std::uint64_t>(16, static_cast<std::uint64_t>(cap));
}

GaussianInteger size_reduce_pair(GsoState& s, std::size_t k, std::size_t l) {
    const std::size_t n = s.dim();
    if (k >= n || l >= k) throw IndexOutOfRangeError("size_reduce_pair: need l < k < n");
    const Complex mu_kl = s.mu(k, l);
    if (std::abs(mu_kl.real()) < 0.5 && std::abs(mu_kl.imag()) < 0.5) return {};

    const GaussianInteger q = round_gaussian(mu_kl);
    const Complex qc = q.to_complex();
    auto bk = s.basis.col(k);
    const auto bl = s.basis.col(l);
    for (std::size_t r = 0; r < n; ++r) bk[r] -= qc * bl[r];
    s.transform.sub_scaled_col(k, l, q);
    for (std::size_t j = 0; j <= l; ++j) s.mu(k, j) -= qc * s.mu(l, j);
    s.flops += 2ull * n + 2ull * (l + 1);
    return q;
}

bool lovasz_holds(const GsoState& s, std::size_t k, double delta) {
    if (k == 0 || k >= s.dim()) throw IndexOutOfRangeError("lovasz_holds: need 1 <= k < n");
    const double prev = s.gs_norms_sq[k - 1];
    const double lhs = s.gs_norms_sq[k] + std::norm(s.mu(k, k - 1)) * prev;
    return lhs >= (delta - kLovaszSlack) * prev;
}

void swap_update(GsoState& s, std::size_t k) {
    const std::size_t n = s.dim();
    if (k == 0 || k >= n) throw IndexOutOfRangeError("swap_update: need 1 <= k < n");

    const Complex mu_k = s.mu(k, k - 1);
    const double b_prev = s.gs_norms_sq[k - 1];
    const double b_cur = s.gs_norms_sq[k];
    const double b_prev_new = b_cur + std::norm(mu_k) * b_prev;
    const Complex mu_new = std::conj(mu_k) * b_prev / b_prev_new;
    const double ratio = b_cur / b_prev_new;

    for (std::size_t i = k + 1; i < n; ++i) {
        const Complex t1 = s.mu(i, k - 1);
        const Complex t2 = s.mu(i, k);
        s.mu(i, k - 1) = mu_new * t1 + ratio * t2;
        s.mu(i, k) = t1 - mu_k * t2;
    }
    for (std::size_t j = 0; j + 1 < k; ++j) std::swap(s.mu(k - 1, j), s.mu(k, j));
    s.mu(k, k - 1) = mu_new;
    s.gs_norms_sq[k - 1] = b_prev_new;
    s.gs_norms_sq[k] = b_prev * b_cur / b_prev_new;

    s.basis.swap_cols(k - 1, k);
    s.transform.swap_cols(k - 1, k);

    if (s.has_gs_vectors()) {
        auto gp = s.gs_vectors.col(k - 1);
        auto gc = s.gs_vectors.col(k);
        for (std::size_t r = 0; r < n; ++r) {
            const Complex hp = gp[r];
            const Complex hc = gc[r];
            gp[r] = hc + mu_k * hp;
            gc[r] = hp - mu_new * gp[r];
        }
    }
    s.flops += 6ull * (n - k - 1) + 7ull;
}

namespace {

ReductionResult run_lll(const ComplexMatrix& b, const ReductionParams& params,
                        bool full_size_reduction) {
    require_delta(params.delta);
    const std::size_t n = b.cols();
    const std::uint64_t cap =
        params.max_iterations.value_or(default_iteration_cap(n, Variant::Standard));

    ReductionResult res{gso(b), {}};
    GsoState& s = res.state;
    require_well_conditioned(s);
    ReductionReport& rep = res.report;
    record_trace(s, rep);

    std::size_t k = 1;
    while (k < n) {
        if (rep.iterations >= cap)
            throw IterationCapExceededError("lll_reduce: iteration cap exceeded");
        size_reduce_pair(s, k, k - 1);
        s.flops += kLovaszTestFlops;
        ++rep.iterations;
        if (!lovasz_holds(s, k, params.delta)) {
            ++rep.negative_tests;
            swap_update(s, k);
            ++rep.swaps;
            record_trace(s, rep);
            k = (k > 1) ? k - 1 : 1;
        } else {
            ++rep.positive_tests;
            if (full_size_reduction && k >= 2) {
                const std::uint64_t before = s.flops;
                for (std::size_t l = k - 1; l-- > 0;) size_reduce_pair(s, k, l);
                rep.full_size_reduction_flops += s.flops - before;
            }
            ++k;
        }
    }
    rep.flops = s.flops;
    rep.transform = s.transform;
    return res;
}

}  // namespace

ReductionResult lll_reduce(const ComplexMatrix& b, const ReductionParams& params) {
    return run_lll(b, params, true);
}

ReductionResult effective_lll_reduce(const ComplexMatrix& b, const ReductionParams& params) {
    return run_lll(b, params, false);
}

void finalize_full_size_reduction(GsoState& s, ReductionReport* report) {
    const std::size_t n = s.dim();
    for (std::size_t k = 1; k < n; ++k) {
        const Complex mu = s.mu(k, k - 1);
        if (std::abs(mu.real()) > 0.5 + kCheckSlack || std::abs(mu.imag()) > 0.5 + kCheckSlack)
            throw NotEffectivelyReducedError("finalize: consecutive pair not size-reduced");
    }

    const std::uint64_t before = s.flops;
    for (std::size_t k = 2; k < n; ++k) {
        for (std::size_t l = k - 1; l-- > 0;) size_reduce_pair(s, k, l);
    }
    if (report != nullptr) {
        report->full_size_reduction_flops += s.flops - before;
        report->flops += s.flops - before;
        report->transform = s.transform;
    }
}

ReductionResult lll_deep_reduce(const ComplexMatrix& b, const ReductionParams& params) {
    require_delta(params.delta);
    const std::size_t n = b.cols();
    const std::uint64_t cap =
        params.max_iterations.value_or(default_iteration_cap(n, Variant::Deep));

    ReductionResult res{gso(b), {}};
    GsoState& s = res.state;
    require_well_conditioned(s);
    ReductionReport& rep = res.report;
    record_trace(s, rep);

    std::vector<double> proj_sq(n + 1);
    std::size_t k = 1;
    while (k < n) {
        if (rep.iterations >= cap)
            throw IterationCapExceededError("lll_deep_reduce: iteration cap exceeded");
        for (std::size_t l = k; l-- > 0;) size_reduce_pair(s, k, l);

        // proj_sq[i] = ||pi_i(b_k)||^2 = sum_{j=i..k} |mu(k,j)|^2 ||b_j^||^2
        proj_sq[k] = s.gs_norms_sq[k];
        for (std::size_t i = k; i-- > 0;)
            proj_sq[i] = proj_sq[i + 1] + std::norm(s.mu(k, i)) * s.gs_norms_sq[i];
        s.flops += 2ull * k;
        ++rep.iterations;

        std::size_t insert_at = k;
        for (std::size_t i = 0; i < k; ++i) {
            if (proj_sq[i] < (params.delta - kLovaszSlack) * s.gs_norms_sq[i]) {
                insert_at = i;
                break;
            }
        }
        if (insert_at < k) {
            ++rep.negative_tests;
            ++rep.swaps;
            deep_insert(s, insert_at, k);
            record_trace(s, rep);
            k = std::max<std::size_t>(insert_at, 1);
        } else {
            ++rep.positive_tests;
            ++k;
        }
    }
    rep.flops = s.flops;
    rep.transform = s.transform;
    return res;
}

CheckResult check_reduced(const ComplexMatrix& b, double delta, Notion notion) {
    const GsoState s = gso(b);
    const std::size_t n = s.dim();
    CheckResult out;
    const double half = 0.5 + kCheckSlack;
    using Kind = ConditionViolation::Kind;

    for (std::size_t i = 1; i < n; ++i) {
        const std::size_t j_lo = (notion == Notion::Effective) ? i - 1 : 0;
        for (std::size_t j = j_lo; j < i; ++j) {
            if (std::abs(s.mu(i, j).real()) > half || std::abs(s.mu(i, j).imag()) > half) {
                out.reduced = false;
                out.violations.push_back({Kind::SizeReduction, i, j});
            }
        }
    }

    if (notion == Notion::Deep) {
        std::vector<double> proj_sq(n + 1);
        for (std::size_t k = 1; k < n; ++k) {
            proj_sq[k] = s.gs_norms_sq[k];
            for (std::size_t i = k; i-- > 0;)
                proj_sq[i] = proj_sq[i + 1] + std::norm(s.mu(k, i)) * s.gs_norms_sq[i];
            for (std::size_t i = 0; i < k; ++i) {
                if (delta * s.gs_norms_sq[i] > proj_sq[i] + kCheckSlack * s.gs_norms_sq[i]) {
                    out.reduced = false;
                    out.violations.push_back({Kind::DeepSorting, k, i});
                }
            }
        }
    } else {
        for (std::size_t k = 1; k < n; ++k) {
            const double prev = s.gs_norms_sq[k - 1];
            const double lhs = s.gs_norms_sq[k] + std::norm(s.mu(k, k - 1)) * prev;
            if (lhs < (delta - kCheckSlack) * prev) {
                out.reduced = false;
                out.violations.push_back({Kind::Lovasz, k, k - 1});
            }
        }
    }
    return out;
}

bool is_lll_reduced(const ComplexMatrix& b, double delta) {
    return check_reduced(b, delta, Notion::Lll).reduced;
}

bool is_effectively_reduced(const ComplexMatrix& b, double delta) {
    return check_reduced(b, delta, Notion::Effective).reduced;
}

bool is_deep_reduced(const ComplexMatrix& b, double delta) {
    return check_reduced(b, delta, Notion::Deep).reduced;
}

}  // namespace latred
