#include "latred/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "latred/errors.hpp"

namespace latred {

double log_base_inv_delta(double x, double delta) {
    return std::log(x) / std::log(1.0 / delta);
}

double potential_log(const GsoState& s) {
    const std::size_t n = s.dim();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
        acc += static_cast<double>(n - 1 - i) * std::log(s.gs_norms_sq[i]);
    return acc;
}

std::pair<double, double> extremes(const GsoState& s) {
    const auto [lo, hi] = std::minmax_element(s.gs_norms_sq.begin(), s.gs_norms_sq.end());
    return {*hi, *lo};
}

namespace {

void require_open_delta(double delta) {
    if (!(delta > 0.5) || !(delta < 1.0))
        throw InvalidDeltaError("bound requires delta in (1/2, 1)");
}

}  // namespace

double iteration_bound(std::size_t n, double delta) {
    require_open_delta(delta);
    const double nn = static_cast<double>(n);
    return nn * (nn - 1.0) * (log_base_inv_delta(2.0 * nn, delta) + 1.0) + nn;
}

ComplexityBounds flop_bounds(std::size_t n, double delta) {
    require_open_delta(delta);
    const double nn = static_cast<double>(n);
    const double log2n = log_base_inv_delta(2.0 * nn, delta);
    ComplexityBounds b;
    b.k_minus_bound = nn * (nn - 1.0) / 2.0 * (log2n + 1.0);
    b.k_total_bound = nn * (nn - 1.0) * (log2n + 1.0) + nn;
    b.flop_bound_c1 = 7.0 * nn * nn * nn * log2n + 2.0 * nn * nn * nn;
    b.flop_bound_c2 = 3.0 * nn * nn * (nn * (nn - 1.0) / 2.0 * log2n + (nn - 1.0));
    // n(n-1)(n-2) is divisible by 3, so the bound is an exact integer
    b.sr_cost_bound = (n >= 2)
                          ? static_cast<double>(4ull * n * (n - 1) * (n - 2) / 3ull)
                          : 0.0;
    return b;
}

BasisQuality basis_quality(const ComplexMatrix& b, double delta) {
    const GsoState s = gso(b);
    const std::size_t n = s.dim();
    const double nn = static_cast<double>(n);

    BasisQuality q;
    q.b1_norm = std::sqrt(norm_sq(b.col(0)));
    q.norm_product = 1.0;
    double log_det = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        q.norm_product *= std::sqrt(norm_sq(b.col(i)));
        log_det += 0.5 * std::log(s.gs_norms_sq[i]);
    }
    q.det_abs = std::exp(log_det);
    q.det_root = std::exp(log_det / nn);

    const double alpha = 1.0 / (delta - 0.5);
    q.b1_det_bound = std::pow(alpha, (nn - 1.0) / 4.0) * q.det_root;
    q.product_bound = std::pow(alpha, nn * (nn - 1.0) / 4.0) * q.det_abs;
    q.lambda1_factor = std::pow(alpha, (nn - 1.0) / 2.0);
    const double c = 1.0 / (delta * delta * (delta - 0.5));
    q.parallel_b1_bound = std::pow(c, (nn - 1.0) / 4.0) / std::sqrt(delta) * q.det_root;
    return q;
}

namespace {

struct ShortestSearch {
    const ComplexMatrix& r;  // upper-triangular factor
    std::int64_t radius;
    std::size_t n;
    double best;
    std::vector<GaussianInteger> z;

    // Depth-first over coordinates n-1..0; `acc` is the squared norm of the
    // already-fixed tail, `nonzero` counts nonzero coefficients so far.
    void descend(std::size_t level, double acc, std::size_t nonzero) {
        const std::size_t m = level - 1;
        Complex t = 0.0;
        for (std::size_t j = level; j < n; ++j) t += r(m, j) * z[j].to_complex();
        const double rmm = r(m, m).real();
        for (std::int64_t re = -radius; re <= radius; ++re) {
            for (std::int64_t im = -radius; im <= radius; ++im) {
                const Complex zr{static_cast<double>(re), static_cast<double>(im)};
                const double contrib = std::norm(rmm * zr + t);
                const double total = acc + contrib;
                if (total >= best) continue;
                if (m == 0) {
                    if (nonzero + (re != 0 || im != 0 ? 1 : 0) == 0) continue;
                    best = total;
                } else {
                    z[m] = {re, im};
                    descend(m, total, nonzero + (re != 0 || im != 0 ? 1 : 0));
                    z[m] = {0, 0};
                }
            }
        }
    }
};

}  // namespace

double shortest_vector_norm_sq(const ComplexMatrix& reduced_basis, std::int64_t radius) {
    const std::size_t n = reduced_basis.cols();
    if (n > 4) throw SearchTooLargeError("shortest_vector_norm_sq: n > 4");
    const GsoState s = gso(reduced_basis);
    const ComplexMatrix r = r_factor(s);

    ShortestSearch search{r, radius, n, norm_sq(reduced_basis.col(0)), {}};
    search.z.assign(n, GaussianInteger{});
    search.descend(n, 0.0, 0);
    return search.best;
}

}  // namespace latred
