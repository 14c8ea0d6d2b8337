#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace latred {

using Complex = std::complex<double>;

// Gaussian integer: element of Z + jZ, stored exactly.
struct GaussianInteger {
    std::int64_t re = 0;
    std::int64_t im = 0;

    bool is_zero() const { return re == 0 && im == 0; }
    Complex to_complex() const { return {static_cast<double>(re), static_cast<double>(im)}; }

    friend bool operator==(const GaussianInteger&, const GaussianInteger&) = default;
    GaussianInteger operator-() const { return {-re, -im}; }
    GaussianInteger operator+(const GaussianInteger& o) const { return {re + o.re, im + o.im}; }
    GaussianInteger operator-(const GaussianInteger& o) const { return {re - o.re, im - o.im}; }
    GaussianInteger operator*(const GaussianInteger& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
};

// Nearest Gaussian integer, real and imaginary parts rounded independently.
// Ties (fraction exactly 0.5) round half away from zero.
GaussianInteger round_gaussian(Complex z);

// Dense complex matrix, column-major: column j is basis vector b_j.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

    std::span<Complex> col(std::size_t j) { return {data_.data() + j * rows_, rows_}; }
    std::span<const Complex> col(std::size_t j) const { return {data_.data() + j * rows_, rows_}; }

    void swap_cols(std::size_t a, std::size_t b);
    // Moves column `from` to position `to` (to < from), shifting the block in between right.
    void rotate_col_into(std::size_t to, std::size_t from);

    bool all_finite() const;
    double max_col_norm_sq() const;

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

// Exact Gaussian-integer matrix, used for the unimodular transform U with B = B_orig * U.
class GaussianIntegerMatrix {
public:
    GaussianIntegerMatrix() = default;
    GaussianIntegerMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static GaussianIntegerMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    GaussianInteger& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
    const GaussianInteger& operator()(std::size_t r, std::size_t c) const {
        return data_[c * rows_ + r];
    }

    void swap_cols(std::size_t a, std::size_t b);
    void rotate_col_into(std::size_t to, std::size_t from);
    // col_dst -= q * col_src
    void sub_scaled_col(std::size_t dst, std::size_t src, GaussianInteger q);

    ComplexMatrix to_complex() const;

    friend bool operator==(const GaussianIntegerMatrix&, const GaussianIntegerMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianInteger> data_;
};

// <u, v> = u^H v (linear in the second argument).
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm_sq(std::span<const Complex> v);

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const GaussianIntegerMatrix& b);
ComplexMatrix conj_transpose(const ComplexMatrix& a);

// Gram matrix A = B^H B. The lower triangle is computed and mirrored, so the
// result is Hermitian exactly.
ComplexMatrix gram(const ComplexMatrix& b);

// Gauss-Jordan inverse with partial pivoting. Throws SingularBasisError.
ComplexMatrix inverse(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace latred
