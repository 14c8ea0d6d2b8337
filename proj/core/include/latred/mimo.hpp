#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "latred/complex_matrix.hpp"
#include "latred/reduction.hpp"
#include "latred/rng.hpp"

namespace latred {

// i.i.d. complex normal channel: real and imaginary parts of every entry are
// independent standard normals, so E||b_i^||^2 = 2(n-i+1) and the squared
// R-factor diagonals are chi-square with 2(n-i+1) degrees of freedom.
struct ChannelModel {
    std::size_t n = 4;
};

ComplexMatrix sample_basis(const ChannelModel& model, Rng& rng);

// Square QAM on the odd-integer Gaussian grid {+-1, +-3, ...}^2, zero mean.
// The grid is kept unnormalized so lattice decoding operates on Gaussian
// integers; norm_factor = 1/sqrt(energy) yields unit average energy.
struct QamConstellation {
    unsigned order = 4;            // M
    int half_levels = 1;           // sqrt(M)/2; levels are odd in [-(2h-1), 2h-1]
    double energy = 2.0;           // mean |x|^2 of the unnormalized grid
    double norm_factor = 0.0;      // 1/sqrt(energy)
    std::vector<Complex> points;   // all M grid points
};

// M in {4, 16, 64}; UnsupportedOrderError otherwise.
QamConstellation qam_symbols(unsigned m);

enum class Detector { Zf, Sic, Ml };
enum class ReductionKind { None, Lll, Effective, Deep, ParallelEffective, ParallelDeep, Hybrid };

const char* to_string(Detector d);
const char* to_string(ReductionKind k);
Detector detector_from_string(const std::string& s);        // ParseError on unknown names
ReductionKind reduction_kind_from_string(const std::string& s);

// One detector decision. Odd-grid symbols are x = 2u + (1+j)1 with u a
// Gaussian-integer vector; the detectors shift the receive vector into the
// u domain, decode the infinite lattice first and clip the mapped symbols to
// the constellation box afterwards.
struct Detection {
    std::vector<GaussianInteger> coeffs;  // symbol-lattice coefficients u
    std::vector<Complex> lattice_point;   // decoded point B*u of the u-domain lattice
    std::vector<Complex> symbols;         // clipped odd-grid symbol estimates
};

// Babai nearest-plane (SIC) on the reduced basis, last coordinate first,
// rounding each coordinate to the Gaussian-integer grid; the estimate is
// mapped back through the unimodular transform u_mat (b_reduced = b * u_mat).
Detection detect_sic(const ComplexMatrix& b, const ComplexMatrix& b_reduced,
                     const GaussianIntegerMatrix& u_mat, std::span<const Complex> y,
                     const QamConstellation& qam);

// Babai rounding round(B_reduced^{-1} y'). Lattice-reduction-aided ZF
// requires a fully size-reduced basis (NotFullyReducedError otherwise);
// passing require_fully_reduced = false gives the classical unchecked linear
// ZF baseline on a raw basis.
Detection detect_zf(const ComplexMatrix& b, const ComplexMatrix& b_reduced,
                    const GaussianIntegerMatrix& u_mat, std::span<const Complex> y,
                    const QamConstellation& qam, bool require_fully_reduced = true);

// Exact maximum-likelihood decision: exhaustive minimization of ||y - Bx||
// over the finite constellation, implemented as depth-first search with
// partial-norm pruning (identical result to plain enumeration).
// Guard: M^n <= 1e7 (SearchTooLargeError).
Detection detect_ml(const ComplexMatrix& b, std::span<const Complex> y,
                    const QamConstellation& qam);

struct BerConfig {
    std::size_t n = 4;
    unsigned qam_order = 16;
    std::vector<double> snr_db;
    std::uint64_t trials = 1000;
    ReductionKind variant = ReductionKind::Lll;
    double delta = 0.75;
    std::uint64_t budget = 0;  // 0 = default for the variant
    Detector detector = Detector::Sic;
    bool mmse_extension = false;
    std::uint64_t seed = 1;
};

struct BerPoint {
    double snr_db = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t bits_total = 0;
    std::uint64_t symbol_errors = 0;
    double ber = 0.0;
};

struct BerResult {
    BerConfig config;
    std::vector<BerPoint> points;
};

// Monte Carlo BER run. SNR is defined as average received symbol energy per
// receive dimension over the per-complex-dimension noise variance; bit errors
// are counted under Gray mapping per real dimension. Deterministic given
// config.seed (per-trial streams keyed by (seed, snr index, trial index)).
BerResult run_ber(const BerConfig& config);

// CSV rows: snr_db, trials, bit_errors, ber, variant, budget, detector.
std::string ber_result_csv(const BerResult& result);

// MMSE lattice-decoding extension: reduce the square basis R~ with
// gram(R~) = B^H B + sigma^2 I and decode the matched filtered receive
// vector R~^{-H} B^H y.
ComplexMatrix mmse_augmented_basis(const ComplexMatrix& b, double sigma_sq);
std::vector<Complex> mmse_receive(const ComplexMatrix& b, const ComplexMatrix& b_mmse,
                                  std::span<const Complex> y);

// Gray-coded bits of one odd-grid level (-(m-1) .. m-1 odd), m levels per
// real dimension.
unsigned gray_bits_of_level(int level, int m);

// chi-square CDF (any dof >= 1) via the regularized incomplete gamma.
double chi_squared_cdf(double x, unsigned dof);

// Two-sided Kolmogorov-Smirnov statistic against a fully specified CDF.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

}  // namespace latred
