#include "latred/gso.hpp"

#include <cmath>

#include "latred/errors.hpp"

namespace latred {

double singularity_tolerance(double column_norm_sq) {
    return 1e-12 * column_norm_sq;
}

GsoState gso(const ComplexMatrix& b) {
    if (!b.is_square() || b.empty())
        throw DimensionMismatchError("gso: basis must be square and nonempty");
    if (!b.all_finite()) throw SingularBasisError("gso: non-finite entries");
    const std::size_t n = b.cols();

    GsoState s;
    s.basis = b;
    s.mu = ComplexMatrix::identity(n);
    s.gs_norms_sq.assign(n, 0.0);
    s.gs_vectors = b;
    s.transform = GaussianIntegerMatrix::identity(n);

    for (std::size_t i = 0; i < n; ++i) {
        auto v = s.gs_vectors.col(i);
        for (std::size_t j = 0; j < i; ++j) {
            const auto gj = s.gs_vectors.col(j);
            const Complex m = inner(gj, std::span<const Complex>(v)) / s.gs_norms_sq[j];
            for (std::size_t r = 0; r < n; ++r) v[r] -= m * gj[r];
            s.mu(i, j) = m;
        }
        s.gs_norms_sq[i] = norm_sq(v);
        if (!(s.gs_norms_sq[i] > kGsoNoiseFloorSq * norm_sq(b.col(i))))
            throw SingularBasisError("gso: basis is numerically singular");
    }
    s.flops += 2ull * n * n * n;
    return s;
}

ComplexMatrix r_factor(const GsoState& state) {
    const std::size_t n = state.dim();
    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rii = std::sqrt(state.gs_norms_sq[i]);
        r(i, i) = rii;
        for (std::size_t j = i + 1; j < n; ++j) r(i, j) = state.mu(j, i) * rii;
    }
    return r;
}

ComplexMatrix cholesky(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatchError("cholesky: matrix not square");
    const std::size_t n = a.rows();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, a(i, i).real());
    const double tol = 1e-12 * max_diag;

    ComplexMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        double d = a(i, i).real();
        for (std::size_t m = 0; m < i; ++m) d -= std::norm(r(m, i));
        if (!(d > tol)) throw NotPositiveDefiniteError("cholesky: pivot not positive");
        const double rii = std::sqrt(d);
        r(i, i) = rii;
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex v = a(i, j);
            for (std::size_t m = 0; m < i; ++m) v -= std::conj(r(m, i)) * r(m, j);
            r(i, j) = v / rii;
        }
    }
    return r;
}

}  // namespace latred
