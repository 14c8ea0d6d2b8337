#include "latred/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "latred/errors.hpp"

namespace latred {

GaussianInteger round_gaussian(Complex z) {
    // llround rounds halfway cases away from zero, which is the tie rule here.
    return {std::llround(z.real()), std::llround(z.imag())};
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void ComplexMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * rows_, data_.begin() + (a + 1) * rows_,
                     data_.begin() + b * rows_);
}

void ComplexMatrix::rotate_col_into(std::size_t to, std::size_t from) {
    if (to >= from) return;
    std::rotate(data_.begin() + to * rows_, data_.begin() + from * rows_,
                data_.begin() + (from + 1) * rows_);
}

bool ComplexMatrix::all_finite() const {
    for (const Complex& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double ComplexMatrix::max_col_norm_sq() const {
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) best = std::max(best, norm_sq(col(j)));
    return best;
}

GaussianIntegerMatrix GaussianIntegerMatrix::identity(std::size_t n) {
    GaussianIntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = {1, 0};
    return m;
}

void GaussianIntegerMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * rows_, data_.begin() + (a + 1) * rows_,
                     data_.begin() + b * rows_);
}

void GaussianIntegerMatrix::rotate_col_into(std::size_t to, std::size_t from) {
    if (to >= from) return;
    std::rotate(data_.begin() + to * rows_, data_.begin() + from * rows_,
                data_.begin() + (from + 1) * rows_);
}

void GaussianIntegerMatrix::sub_scaled_col(std::size_t dst, std::size_t src, GaussianInteger q) {
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, dst) = (*this)(r, dst) - q * (*this)(r, src);
    }
}

ComplexMatrix GaussianIntegerMatrix::to_complex() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t c = 0; c < cols_; ++c)
        for (std::size_t r = 0; r < rows_; ++r) m(r, c) = (*this)(r, c).to_complex();
    return m;
}

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
    return acc;
}

double norm_sq(std::span<const Complex> v) {
    double acc = 0.0;
    for (const Complex& z : v) acc += std::norm(z);
    return acc;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatchError("multiply: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex f = b(k, j);
            if (f == 0.0) continue;
            for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * f;
        }
    }
    return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const GaussianIntegerMatrix& b) {
    return multiply(a, b.to_complex());
}

ComplexMatrix conj_transpose(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix gram(const ComplexMatrix& b) {
    const std::size_t n = b.cols();
    ComplexMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = j; i < n; ++i) {
            const Complex v = inner(b.col(i), b.col(j));  // a(i,j), lower triangle
            a(i, j) = (i == j) ? Complex(v.real(), 0.0) : v;
            if (i != j) a(j, i) = std::conj(v);
        }
    }
    return a;
}

ComplexMatrix inverse(const ComplexMatrix& a) {
    if (!a.is_square()) throw DimensionMismatchError("inverse: matrix not square");
    const std::size_t n = a.rows();
    ComplexMatrix work = a;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    const double tol = 1e-14 * std::sqrt(std::max(work.max_col_norm_sq(), 1.0));

    for (std::size_t c = 0; c < n; ++c) {
        std::size_t pivot = c;
        double best = std::abs(work(c, c));
        for (std::size_t r = c + 1; r < n; ++r) {
            if (std::abs(work(r, c)) > best) {
                best = std::abs(work(r, c));
                pivot = r;
            }
        }
        if (best <= tol) throw SingularBasisError("inverse: singular matrix");
        if (pivot != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(work(c, j), work(pivot, j));
                std::swap(inv(c, j), inv(pivot, j));
            }
        }
        const Complex d = work(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            work(c, j) /= d;
            inv(c, j) /= d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const Complex f = work(r, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                work(r, j) -= f * work(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

double frobenius_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += norm_sq(a.col(j));
    return std::sqrt(acc);
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError("frobenius_distance: shapes differ");
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) acc += std::norm(a(i, j) - b(i, j));
    return std::sqrt(acc);
}

}  // namespace latred
