#include "latred/realify.hpp"

#include "latred/errors.hpp"
#include "latred/reduction.hpp"

namespace latred {

ApproxFactors approx_factors(double delta) {
    if (!(delta > 0.5) || !(delta <= 1.0))
        throw InvalidDeltaError("approx_factors requires delta in (1/2, 1]");
    ApproxFactors f;
    f.alpha = 1.0 / (delta - 0.5);
    f.beta = 1.0 / (delta - 0.25);
    f.c_complex = 1.0 / (delta * delta * (delta - 0.5));
    f.c_real = 1.0 / (delta * delta * (delta - 0.25));
    return f;
}

ComplexMatrix realify_local(const ComplexMatrix& b) {
    const std::size_t rows = b.rows();
    const std::size_t cols = b.cols();
    ComplexMatrix out(2 * rows, 2 * cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            const double re = b(i, j).real();
            const double im = b(i, j).imag();
            out(2 * i, 2 * j) = re;
            out(2 * i, 2 * j + 1) = -im;
            out(2 * i + 1, 2 * j) = im;
            out(2 * i + 1, 2 * j + 1) = re;
        }
    }
    return out;
}

ComplexMatrix realify_block(const ComplexMatrix& b) {
    const std::size_t rows = b.rows();
    const std::size_t cols = b.cols();
    ComplexMatrix out(2 * rows, 2 * cols);
    for (std::size_t j = 0; j < cols; ++j) {
        for (std::size_t i = 0; i < rows; ++i) {
            const double re = b(i, j).real();
            const double im = b(i, j).imag();
            out(i, j) = re;
            out(i, j + cols) = -im;
            out(i + rows, j) = im;
            out(i + rows, j + cols) = re;
        }
    }
    return out;
}

ComplexMatrix dual_basis(const ComplexMatrix& b) {
    const ComplexMatrix adj = conj_transpose(inverse(b));
    const std::size_t n = adj.cols();
    ComplexMatrix out(adj.rows(), n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto src = adj.col(n - 1 - j);
        auto dst = out.col(j);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return out;
}

bool check_reducedness_transfer(const ComplexMatrix& b, double delta) {
    if (!is_lll_reduced(b, delta))
        throw PreconditionFailedError("check_reducedness_transfer: input not complex-LLL-reduced");
    return is_lll_reduced(realify_local(b), delta - 0.25);
}

}  // namespace latred
