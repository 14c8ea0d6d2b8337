#include "latred/mimo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "latred/errors.hpp"
#include "latred/parallel.hpp"

namespace latred {

namespace {

constexpr double kCheckSlack = 1e-9;

}  // namespace

ComplexMatrix sample_basis(const ChannelModel& model, Rng& rng) {
    ComplexMatrix b(model.n, model.n);
    for (std::size_t j = 0; j < model.n; ++j) {
        for (std::size_t i = 0; i < model.n; ++i) {
            const double re = rng.next_gaussian();
            const double im = rng.next_gaussian();
            b(i, j) = {re, im};
        }
    }
    return b;
}

QamConstellation qam_symbols(unsigned m) {
    if (m != 4 && m != 16 && m != 64)
        throw UnsupportedOrderError("qam_symbols: order must be 4, 16 or 64");
    QamConstellation c;
    c.order = m;
    const int levels = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m))));
    c.half_levels = levels / 2;
    // per-dimension PAM second moment (m^2-1)/3, two dimensions
    c.energy = 2.0 * (static_cast<double>(levels) * levels - 1.0) / 3.0;
    c.norm_factor = 1.0 / std::sqrt(c.energy);
    for (int re = -(levels - 1); re <= levels - 1; re += 2)
        for (int im = -(levels - 1); im <= levels - 1; im += 2)
            c.points.push_back({static_cast<double>(re), static_cast<double>(im)});
    return c;
}

const char* to_string(Detector d) {
    switch (d) {
        case Detector::Zf: return "zf";
        case Detector::Sic: return "sic";
        case Detector::Ml: return "ml";
    }
    return "?";
}

const char* to_string(ReductionKind k) {
    switch (k) {
        case ReductionKind::None: return "none";
        case ReductionKind::Lll: return "lll";
        case ReductionKind::Effective: return "effective";
        case ReductionKind::Deep: return "deep";
        case ReductionKind::ParallelEffective: return "parallel-effective";
        case ReductionKind::ParallelDeep: return "parallel-deep";
        case ReductionKind::Hybrid: return "hybrid";
    }
    return "?";
}

Detector detector_from_string(const std::string& s) {
    if (s == "zf") return Detector::Zf;
    if (s == "sic") return Detector::Sic;
    if (s == "ml") return Detector::Ml;
    throw ParseError("unknown detector: " + s);
}

ReductionKind reduction_kind_from_string(const std::string& s) {
    if (s == "none") return ReductionKind::None;
    if (s == "lll") return ReductionKind::Lll;
    if (s == "effective") return ReductionKind::Effective;
    if (s == "deep") return ReductionKind::Deep;
    if (s == "parallel-effective") return ReductionKind::ParallelEffective;
    if (s == "parallel-deep") return ReductionKind::ParallelDeep;
    if (s == "hybrid") return ReductionKind::Hybrid;
    throw ParseError("unknown reduction variant: " + s);
}

namespace {

int clip_level(long long v, int half) {
    const int top = 2 * half - 1;
    if (v > top) return top;
    if (v < -top) return -top;
    return static_cast<int>(v);
}

// x = 2u + (1+j)1 mapped back and clipped to the constellation box
Detection finish_detection(const ComplexMatrix& b_reduced, const GaussianIntegerMatrix& u_mat,
                           const std::vector<GaussianInteger>& z, const QamConstellation& qam) {
    const std::size_t n = b_reduced.cols();
    Detection d;
    d.coeffs.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        GaussianInteger acc{};
        for (std::size_t j = 0; j < n; ++j) acc = acc + u_mat(r, j) * z[j];
        d.coeffs[r] = acc;
    }
    d.lattice_point.assign(b_reduced.rows(), Complex{});
    for (std::size_t j = 0; j < n; ++j) {
        const auto bj = b_reduced.col(j);
        const Complex zj = z[j].to_complex();
        for (std::size_t r = 0; r < b_reduced.rows(); ++r) d.lattice_point[r] += bj[r] * zj;
    }
    d.symbols.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        const int re = clip_level(2 * d.coeffs[r].re + 1, qam.half_levels);
        const int im = clip_level(2 * d.coeffs[r].im + 1, qam.half_levels);
        d.symbols[r] = {static_cast<double>(re), static_cast<double>(im)};
    }
    return d;
}

// y' = (y - B (1+j) 1) / 2, the u-domain receive vector
std::vector<Complex> to_symbol_lattice(const ComplexMatrix& b, std::span<const Complex> y) {
    std::vector<Complex> shifted(y.begin(), y.end());
    const Complex offset{1.0, 1.0};
    for (std::size_t j = 0; j < b.cols(); ++j) {
        const auto bj = b.col(j);
        for (std::size_t r = 0; r < shifted.size(); ++r) shifted[r] -= bj[r] * offset;
    }
    for (Complex& v : shifted) v *= 0.5;
    return shifted;
}

std::vector<GaussianInteger> babai_nearest_plane(const GsoState& s, std::span<const Complex> y) {
    const std::size_t n = s.dim();
    std::vector<Complex> residual(y.begin(), y.end());
    std::vector<GaussianInteger> z(n);
    for (std::size_t k = n; k-- > 0;) {
        const auto gk = s.gs_vectors.col(k);
        const Complex c =
            inner(gk, std::span<const Complex>(residual)) / s.gs_norms_sq[k];
        z[k] = round_gaussian(c);
        const Complex zc = z[k].to_complex();
        const auto bk = s.basis.col(k);
        for (std::size_t r = 0; r < residual.size(); ++r) residual[r] -= zc * bk[r];
    }
    return z;
}

}  // namespace

Detection detect_sic(const ComplexMatrix& b, const ComplexMatrix& b_reduced,
                     const GaussianIntegerMatrix& u_mat, std::span<const Complex> y,
                     const QamConstellation& qam) {
    if (y.size() != b_reduced.rows())
        throw DimensionMismatchError("detect_sic: receive vector length mismatch");
    const std::vector<Complex> shifted = to_symbol_lattice(b, y);
    const GsoState s = gso(b_reduced);
    const std::vector<GaussianInteger> z = babai_nearest_plane(s, shifted);
    return finish_detection(b_reduced, u_mat, z, qam);
}

Detection detect_zf(const ComplexMatrix& b, const ComplexMatrix& b_reduced,
                    const GaussianIntegerMatrix& u_mat, std::span<const Complex> y,
                    const QamConstellation& qam, bool require_fully_reduced) {
    if (y.size() != b_reduced.rows())
        throw DimensionMismatchError("detect_zf: receive vector length mismatch");
    const GsoState s = gso(b_reduced);
    const std::size_t n = s.dim();

    if (require_fully_reduced) {
        for (std::size_t i = 1; i < n; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                const Complex mu = s.mu(i, j);
                if (std::abs(mu.real()) > 0.5 + kCheckSlack ||
                    std::abs(mu.imag()) > 0.5 + kCheckSlack)
                    throw NotFullyReducedError("detect_zf: basis is not fully size-reduced");
            }
    }

    const std::vector<Complex> shifted = to_symbol_lattice(b, y);

    // w = B_red^{-1} y' through the GSO: t = mu^T w with t_i = <b_i^, y'>/||b_i^||^2
    std::vector<Complex> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = inner(s.gs_vectors.col(i), shifted) / s.gs_norms_sq[i];
    std::vector<Complex> w(n);
    for (std::size_t i = n; i-- > 0;) {
        Complex acc = t[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= s.mu(j, i) * w[j];
        w[i] = acc;
    }
    std::vector<GaussianInteger> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = round_gaussian(w[i]);
    return finish_detection(b_reduced, u_mat, z, qam);
}

namespace {

// Exhaustive ML search over the constellation on the R factor, depth-first
// with partial-norm pruning. R has positive real diagonal so the real and
// imaginary level contributions decouple at each node; enumerating each in
// ascending contribution order makes the early `break`s exact.
struct MlSearch {
    const ComplexMatrix& r;
    std::span<const Complex> y_tilde;
    std::vector<int> levels;  // odd levels in the box, e.g. -3 -1 1 3
    std::size_t n;
    double best = 0.0;
    std::vector<Complex> best_x;
    std::vector<Complex> x;

    void descend(std::size_t depth, double acc) {
        const std::size_t m = depth - 1;
        Complex partial = 0.0;
        for (std::size_t j = depth; j < n; ++j) partial += r(m, j) * x[j];
        const double rmm = r(m, m).real();
        const Complex center = (y_tilde[m] - partial) / rmm;

        std::vector<std::pair<double, int>> re_c, im_c;
        re_c.reserve(levels.size());
        im_c.reserve(levels.size());
        for (int lv : levels) {
            const double dre = rmm * (center.real() - lv);
            const double dim = rmm * (center.imag() - lv);
            re_c.emplace_back(dre * dre, lv);
            im_c.emplace_back(dim * dim, lv);
        }
        std::sort(re_c.begin(), re_c.end());
        std::sort(im_c.begin(), im_c.end());

        for (const auto& [cre, lre] : re_c) {
            if (acc + cre >= best) break;
            for (const auto& [cim, lim] : im_c) {
                const double total = acc + cre + cim;
                if (total >= best) break;
                x[m] = {static_cast<double>(lre), static_cast<double>(lim)};
                if (m == 0) {
                    best = total;
                    best_x = x;
                } else {
                    descend(m, total);
                }
            }
        }
        x[m] = 0.0;
    }
};

}  // namespace

Detection detect_ml(const ComplexMatrix& b, std::span<const Complex> y,
                    const QamConstellation& qam) {
    const std::size_t n = b.cols();
    if (y.size() != b.rows()) throw DimensionMismatchError("detect_ml: receive vector mismatch");
    if (std::pow(static_cast<double>(qam.order), static_cast<double>(n)) > 1e7)
        throw SearchTooLargeError("detect_ml: M^n exceeds the desk-scale guard");

    const GsoState s = gso(b);
    const ComplexMatrix r = r_factor(s);
    std::vector<Complex> y_tilde(n);
    for (std::size_t i = 0; i < n; ++i)
        y_tilde[i] = inner(s.gs_vectors.col(i), y) / std::sqrt(s.gs_norms_sq[i]);

    MlSearch search{r, y_tilde, {}, n, 0.0, {}, {}};
    for (int lv = -(2 * qam.half_levels - 1); lv <= 2 * qam.half_levels - 1; lv += 2)
        search.levels.push_back(lv);
    search.x.assign(n, Complex{});

    // warm start: Babai point clipped into the box is a valid candidate
    {
        const std::vector<Complex> shifted = to_symbol_lattice(b, y);
        const std::vector<GaussianInteger> z0 = babai_nearest_plane(s, shifted);
        std::vector<Complex> x0(n);
        for (std::size_t i = 0; i < n; ++i) {
            x0[i] = {static_cast<double>(clip_level(2 * z0[i].re + 1, qam.half_levels)),
                     static_cast<double>(clip_level(2 * z0[i].im + 1, qam.half_levels))};
        }
        double acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            Complex partial = 0.0;
            for (std::size_t j = m; j < n; ++j) partial += r(m, j) * x0[j];
            acc += std::norm(y_tilde[m] - partial);
        }
        search.best = acc * (1.0 + 1e-12) + 1e-300;
        search.best_x = x0;
    }
    search.descend(n, 0.0);

    Detection d;
    d.symbols = search.best_x;
    d.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.coeffs[i] = {static_cast<std::int64_t>(std::llround((d.symbols[i].real() - 1.0) / 2.0)),
                       static_cast<std::int64_t>(std::llround((d.symbols[i].imag() - 1.0) / 2.0))};
    }
    d.lattice_point.assign(b.rows(), Complex{});
    for (std::size_t j = 0; j < n; ++j) {
        const auto bj = b.col(j);
        const Complex uj = d.coeffs[j].to_complex();
        for (std::size_t r2 = 0; r2 < b.rows(); ++r2) d.lattice_point[r2] += bj[r2] * uj;
    }
    return d;
}

ComplexMatrix mmse_augmented_basis(const ComplexMatrix& b, double sigma_sq) {
    ComplexMatrix a = gram(b);
    for (std::size_t i = 0; i < a.rows(); ++i) a(i, i) += sigma_sq;
    return cholesky(a);
}

std::vector<Complex> mmse_receive(const ComplexMatrix& b, const ComplexMatrix& b_mmse,
                                  std::span<const Complex> y) {
    const std::size_t n = b.cols();
    // matched filter B^H y, then forward substitution with R~^H (lower triangular)
    std::vector<Complex> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = inner(b.col(i), y);
    std::vector<Complex> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc = rhs[i];
        for (std::size_t j = 0; j < i; ++j) acc -= std::conj(b_mmse(j, i)) * out[j];
        out[i] = acc / b_mmse(i, i).real();
    }
    return out;
}

unsigned gray_bits_of_level(int level, int m) {
    const unsigned idx = static_cast<unsigned>((level + (m - 1)) / 2);
    return idx ^ (idx >> 1);
}

namespace {

struct ReducedBasisCache {
    ComplexMatrix basis;
    GaussianIntegerMatrix transform;
};

ReducedBasisCache reduce_for_detection(const ComplexMatrix& b, const BerConfig& cfg) {
    ReductionParams params;
    params.delta = cfg.delta;
    switch (cfg.variant) {
        case ReductionKind::None:
            return {b, GaussianIntegerMatrix::identity(b.cols())};
        case ReductionKind::Lll: {
            auto res = lll_reduce(b, params);
            return {res.state.basis, res.state.transform};
        }
        case ReductionKind::Effective: {
            auto res = effective_lll_reduce(b, params);
            return {res.state.basis, res.state.transform};
        }
        case ReductionKind::Deep: {
            auto res = lll_deep_reduce(b, params);
            return {res.state.basis, res.state.transform};
        }
        case ReductionKind::ParallelEffective: {
            const std::uint64_t budget =
                cfg.budget ? cfg.budget : default_parallel_effective_budget(b.cols());
            auto res = parallel_effective_lll(b, params, SuperIterationBudget{budget});
            return {res.state.basis, res.state.transform};
        }
        case ReductionKind::ParallelDeep: {
            const std::uint64_t budget =
                cfg.budget ? cfg.budget : default_parallel_deep_budget(b.cols());
            auto res = parallel_lll_deep(b, params, SuperIterationBudget{budget});
            return {res.state.basis, res.state.transform};
        }
        case ReductionKind::Hybrid: {
            auto res = hybrid_lll_deep(b, params, cfg.budget ? cfg.budget : 2);
            return {res.state.basis, res.state.transform};
        }
    }
    throw PreconditionFailedError("reduce_for_detection: unknown variant");
}

}  // namespace

BerResult run_ber(const BerConfig& cfg) {
    BerResult result;
    result.config = cfg;
    const QamConstellation qam = qam_symbols(cfg.qam_order);
    const int levels = 2 * qam.half_levels;
    const unsigned bits_per_dim =
        static_cast<unsigned>(std::lround(std::log2(static_cast<double>(levels))));
    const ChannelModel model{cfg.n};

    for (std::size_t snr_idx = 0; snr_idx < cfg.snr_db.size(); ++snr_idx) {
        const double snr_lin = std::pow(10.0, cfg.snr_db[snr_idx] / 10.0);
        // average received symbol energy per receive dimension: 2 n E_grid
        const double sigma_sq = 2.0 * static_cast<double>(cfg.n) * qam.energy / snr_lin;
        BerPoint point;
        point.snr_db = cfg.snr_db[snr_idx];
        point.trials = cfg.trials;

        for (std::uint64_t trial = 0; trial < cfg.trials; ++trial) {
            Rng rng = Rng::for_trial(cfg.seed, snr_idx, trial);
            const ComplexMatrix b = sample_basis(model, rng);

            std::vector<int> tx_re(cfg.n), tx_im(cfg.n);
            std::vector<Complex> x(cfg.n);
            for (std::size_t i = 0; i < cfg.n; ++i) {
                tx_re[i] = 2 * static_cast<int>(rng.next_below(levels)) - (levels - 1);
                tx_im[i] = 2 * static_cast<int>(rng.next_below(levels)) - (levels - 1);
                x[i] = {static_cast<double>(tx_re[i]), static_cast<double>(tx_im[i])};
            }
            std::vector<Complex> y(cfg.n);
            const double noise_scale = std::sqrt(sigma_sq / 2.0);
            for (std::size_t i = 0; i < cfg.n; ++i) {
                Complex acc = 0.0;
                for (std::size_t j = 0; j < cfg.n; ++j) acc += b(i, j) * x[j];
                acc += noise_scale * Complex{rng.next_gaussian(), rng.next_gaussian()};
                y[i] = acc;
            }

            ComplexMatrix b_eff = b;
            std::vector<Complex> y_eff = y;
            if (cfg.mmse_extension && sigma_sq > 0.0) {
                b_eff = mmse_augmented_basis(b, sigma_sq);
                y_eff = mmse_receive(b, b_eff, y);
            }

            Detection det;
            if (cfg.detector == Detector::Ml) {
                det = detect_ml(b_eff, y_eff, qam);
            } else {
                const ReducedBasisCache red = reduce_for_detection(b_eff, cfg);
                det = (cfg.detector == Detector::Sic)
                          ? detect_sic(b_eff, red.basis, red.transform, y_eff, qam)
                          : detect_zf(b_eff, red.basis, red.transform, y_eff, qam,
                                      cfg.variant != ReductionKind::None);
            }

            bool symbol_error = false;
            for (std::size_t i = 0; i < cfg.n; ++i) {
                const int rx_re = static_cast<int>(std::lround(det.symbols[i].real()));
                const int rx_im = static_cast<int>(std::lround(det.symbols[i].imag()));
                if (rx_re != tx_re[i] || rx_im != tx_im[i]) symbol_error = true;
                const unsigned diff_re =
                    gray_bits_of_level(tx_re[i], levels) ^ gray_bits_of_level(rx_re, levels);
                const unsigned diff_im =
                    gray_bits_of_level(tx_im[i], levels) ^ gray_bits_of_level(rx_im, levels);
                point.bit_errors += static_cast<unsigned>(std::popcount(diff_re)) +
                                    static_cast<unsigned>(std::popcount(diff_im));
            }
            if (symbol_error) ++point.symbol_errors;
            point.bits_total += cfg.n * 2ull * bits_per_dim;
        }
        point.ber = point.bits_total
                        ? static_cast<double>(point.bit_errors) / static_cast<double>(point.bits_total)
                        : 0.0;
        result.points.push_back(point);
    }
    return result;
}

std::string ber_result_csv(const BerResult& result) {
    std::ostringstream out;
    out << "snr_db,trials,bit_errors,ber,variant,budget,detector\n";
    for (const BerPoint& p : result.points) {
        out << p.snr_db << ',' << p.trials << ',' << p.bit_errors << ',' << p.ber << ','
            << to_string(result.config.variant) << ',' << result.config.budget << ','
            << to_string(result.config.detector) << '\n';
    }
    return out.str();
}

namespace {

// regularized lower incomplete gamma P(a, x)
double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double log_gamma_a = std::lgamma(a);
    if (x < a + 1.0) {
        // series expansion
        double term = 1.0 / a;
        double sum = term;
        double ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - log_gamma_a);
    }
    // continued fraction (modified Lentz)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - log_gamma_a) * h;
    return 1.0 - q;
}

}  // namespace

double chi_squared_cdf(double x, unsigned dof) {
    return gamma_p(static_cast<double>(dof) / 2.0, x / 2.0);
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

}  // namespace latred
