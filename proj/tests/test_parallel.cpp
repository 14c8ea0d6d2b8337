#include <doctest.h>

#include <cmath>

#include "latred/errors.hpp"
#include "latred/metrics.hpp"
#include "latred/parallel.hpp"
#include "latred/realify.hpp"
#include "latred/rng.hpp"
#include "oracles.hpp"

using namespace latred;

TEST_CASE("parallel effective LLL on the identity") {
    const ReductionResult res =
        parallel_effective_lll(ComplexMatrix::identity(5), {}, SuperIterationBudget{1});
    CHECK(res.report.converged_early);
    CHECK(res.report.swaps == 0);
    CHECK(res.report.super_iterations == 1);
    CHECK(res.basis() == ComplexMatrix::identity(5));
}

TEST_CASE("parallel effective LLL rejects a zero budget") {
    CHECK_THROWS_AS(
        parallel_effective_lll(ComplexMatrix::identity(2), {}, SuperIterationBudget{0}),
        PreconditionFailedError);
}

TEST_CASE("converged parallel effective LLL is effectively reduced with v_max <= 1/delta") {
    Rng rng(101);
    ReductionParams p;
    p.delta = 0.99;
    const ApproxFactors f = approx_factors(p.delta);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 4 + rng.next_below(9);
        const ComplexMatrix b = oracles::random_basis(rng, n);
        const std::uint64_t budget = static_cast<std::uint64_t>(
            std::ceil(static_cast<double>(n) * std::log2(static_cast<double>(n))));
        const ReductionResult res = parallel_effective_lll(b, p, SuperIterationBudget{budget});
        REQUIRE(res.report.converged_early);
        CHECK(is_effectively_reduced(res.basis(), p.delta));

        double v_max = 0.0;
        for (std::size_t i = 1; i <= n; ++i)
            v_max = std::max(v_max, ratio_v(res.state, i, f.c_complex));
        CHECK(v_max <= 1.0 / p.delta + 1e-9);

        // fixed-complexity short-vector bound
        const BasisQuality q = basis_quality(res.basis(), p.delta);
        CHECK(q.b1_norm <= q.parallel_b1_bound * (1 + 1e-9));
    }
}

TEST_CASE("parallel effective LLL potential decreases strictly until the zero-swap sweep") {
    Rng rng(103);
    ReductionParams p;
    p.delta = 0.75;
    for (int t = 0; t < 30; ++t) {
        const ComplexMatrix b = oracles::random_basis(rng, 8);
        const ReductionResult res =
            parallel_effective_lll(b, p, SuperIterationBudget{64});
        const auto& trace = res.report.potential_trace;
        for (std::size_t i = 1; i < trace.size(); ++i) {
            if (res.report.converged_early && i + 1 == trace.size()) {
                CHECK(trace[i] == doctest::Approx(trace[i - 1]).epsilon(1e-12));
            } else {
                CHECK(trace[i] < trace[i - 1] + 1e-12);
            }
        }
    }
}

TEST_CASE("ratio_v values") {
    const GsoState id = gso(ComplexMatrix::identity(6));
    for (std::size_t i = 1; i <= 6; ++i) {
        const double expected = std::pow(2.0, -static_cast<double>(i * (6 - i)) / 2.0);
        CHECK(ratio_v(id, i, 2.0) == doctest::Approx(expected).epsilon(1e-12));
    }
    Rng rng(107);
    const GsoState s = gso(oracles::random_basis(rng, 5));
    CHECK(ratio_v(s, 5, 3.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_THROWS_AS(ratio_v(s, 0, 2.0), IndexOutOfRangeError);
    CHECK_THROWS_AS(ratio_v(s, 6, 2.0), IndexOutOfRangeError);
}

TEST_CASE("sorted_gso identity permutation is stable under ties") {
    const SortedGsoResult sg = sorted_gso(ComplexMatrix::identity(4));
    CHECK(sg.perm.is_identity());
}

TEST_CASE("sorted_gso picks the shortest column first") {
    ComplexMatrix b(2, 2);
    b(0, 0) = 3.0;
    b(0, 1) = 1.0;
    b(1, 1) = 0.1;
    const SortedGsoResult sg = sorted_gso(b);
    CHECK(sg.perm.source[0] == 1);
    CHECK(sg.perm.source[1] == 0);
}

TEST_CASE("sorted_gso state matches plain gso of the permuted basis") {
    Rng rng(109);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 2 + rng.next_below(6);
        const ComplexMatrix b = oracles::random_basis(rng, n);
        const SortedGsoResult sg = sorted_gso(b);
        const GsoState plain = gso(sg.perm.apply(b));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(sg.state.gs_norms_sq[i] ==
                  doctest::Approx(plain.gs_norms_sq[i]).epsilon(1e-10));
            for (std::size_t j = 0; j < i; ++j)
                CHECK(std::abs(sg.state.mu(i, j) - plain.mu(i, j)) <= 1e-10);
        }
        CHECK(frobenius_distance(sg.state.gs_vectors, plain.gs_vectors) <=
              1e-10 * std::max(1.0, frobenius_norm(plain.gs_vectors)));

        // the sorting condition implies the Lovasz condition at delta = 1
        for (std::size_t k = 1; k < n; ++k) CHECK(lovasz_holds(sg.state, k, 1.0));
    }
}

TEST_CASE("delta = 0.99 keeps the parallel correction factor below 1.5 up to n = 80") {
    for (std::size_t n = 1; n <= 80; ++n)
        CHECK(std::pow(1.0 / 0.99, static_cast<double>(n) / 2.0) < 1.5);
}

TEST_CASE("sorted_gso minimizes the maximum GS norm over all permutations") {
    Rng rng(113);
    for (std::size_t n : {3u, 4u, 5u}) {
        for (int t = 0; t < 40; ++t) {
            const ComplexMatrix b = oracles::random_basis(rng, n);
            const oracles::PermutationScan scan = oracles::scan_all_permutations(b);
            const SortedGsoResult sg = sorted_gso(b);
            double max_gs = 0.0;
            for (double v : sg.state.gs_norms_sq) max_gs = std::max(max_gs, v);
            CHECK(std::sqrt(max_gs) ==
                  doctest::Approx(scan.best_maxgs).epsilon(1e-9));
        }
    }
}

TEST_CASE("joint sorted_gso size-reduces while preserving the lattice") {
    Rng rng(127);
    for (int t = 0; t < 30; ++t) {
        const ComplexMatrix b = oracles::random_basis(rng, 6);
        const SortedGsoResult sg = sorted_gso(b, true);
        // transform consistency: basis = input * U
        const ComplexMatrix via_u = multiply(b, sg.state.transform);
        CHECK(frobenius_distance(via_u, sg.state.basis) <=
              1e-9 * std::max(1.0, frobenius_norm(sg.state.basis)));
        // size reduction never changes the GS vectors
        const SortedGsoResult plain = sorted_gso(b, false);
        CHECK(plain.perm.source == sg.perm.source);
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(sg.state.gs_norms_sq[i] ==
                  doctest::Approx(plain.state.gs_norms_sq[i]).epsilon(1e-10));
    }
}

TEST_CASE("sorted_cholesky on a diagonal matrix") {
    ComplexMatrix a(2, 2);
    a(0, 0) = 9.0;
    a(1, 1) = 1.0;
    const SortedCholeskyResult sc = sorted_cholesky(a);
    CHECK(sc.perm.source[0] == 1);
    CHECK(sc.perm.source[1] == 0);
    CHECK(sc.r(0, 0) == Complex{1.0, 0.0});
    CHECK(sc.r(1, 1) == Complex{3.0, 0.0});
}

TEST_CASE("sorted_cholesky equals sorted_gso on the Gram matrix") {
    Rng rng(131);
    for (int t = 0; t < 50; ++t) {
        const ComplexMatrix b = oracles::random_basis(rng, 6);
        const SortedGsoResult sg = sorted_gso(b);
        const SortedCholeskyResult sc = sorted_cholesky(gram(b));
        CHECK(sc.perm.source == sg.perm.source);
        const ComplexMatrix r_gso = r_factor(sg.state);
        CHECK(frobenius_distance(sc.r, r_gso) <=
              1e-8 * std::max(1.0, frobenius_norm(r_gso)));
    }
}

TEST_CASE("sorted_cholesky flops are about one sixth of sorted_gso flops") {
    Rng rng(137);
    const std::size_t n = 16;
    const ComplexMatrix b = oracles::random_basis(rng, n);
    const SortedGsoResult sg = sorted_gso(b);
    const SortedCholeskyResult sc = sorted_cholesky(gram(b));
    const double ratio =
        static_cast<double>(sc.flops) / static_cast<double>(sg.state.flops);
    CHECK(ratio <= (1.0 / 6.0) * 2.0);
    CHECK(ratio >= (1.0 / 6.0) / 2.0);
}

TEST_CASE("sorted_cholesky rejects indefinite input") {
    ComplexMatrix a(2, 2);
    a(0, 0) = 1.0;
    a(0, 1) = 2.0;
    a(1, 0) = 2.0;
    a(1, 1) = 1.0;
    CHECK_THROWS_AS(sorted_cholesky(a), NotPositiveDefiniteError);
}

TEST_CASE("parallel LLL-deep on the identity converges immediately") {
    const ReductionResult res =
        parallel_lll_deep(ComplexMatrix::identity(4), {}, SuperIterationBudget{1});
    CHECK(res.report.converged_early);
    CHECK(res.report.super_iterations == 1);
    CHECK(res.basis() == ComplexMatrix::identity(4));
}

TEST_CASE("converged parallel LLL-deep satisfies the deep conditions at delta = 1") {
    Rng rng(139);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 3 + rng.next_below(8);
        const ComplexMatrix b = oracles::random_basis(rng, n);
        const ReductionResult res =
            parallel_lll_deep(b, {}, SuperIterationBudget{4 * n});
        REQUIRE(res.report.converged_early);
        CHECK(is_deep_reduced(res.basis(), 1.0));
        // transform consistency through the permutation composition
        const ComplexMatrix via_u = multiply(b, res.state.transform);
        CHECK(frobenius_distance(via_u, res.basis()) <=
              1e-9 * std::max(1.0, frobenius_norm(res.basis())));
    }
}

TEST_CASE("parallel LLL-deep potential drops mostly in the first rounds") {
    Rng rng(149);
    int majority = 0;
    const int trials = 40;
    for (int t = 0; t < trials; ++t) {
        const ComplexMatrix b = oracles::random_basis(rng, 16);
        const ReductionResult res =
            parallel_lll_deep(b, {}, SuperIterationBudget{64});
        const auto& trace = res.report.potential_trace;
        REQUIRE(trace.size() >= 3);
        const double first_two = trace[0] - trace[std::min<std::size_t>(2, trace.size() - 1)];
        const double remainder = trace[std::min<std::size_t>(2, trace.size() - 1)] - trace.back();
        if (first_two >= remainder) ++majority;
    }
    CHECK(majority > trials / 2);
}

TEST_CASE("hybrid with zero parallel iterations equals sequential LLL-deep") {
    Rng rng(151);
    const ComplexMatrix b = oracles::random_basis(rng, 8);
    ReductionParams p;
    p.delta = 0.75;
    const ReductionResult direct = lll_deep_reduce(b, p);
    const ReductionResult hybrid = hybrid_lll_deep(b, p, 0);
    CHECK(hybrid.state.basis == direct.state.basis);
    CHECK(hybrid.report.iterations == direct.report.iterations);
}

TEST_CASE("sequential phase after a converged parallel run performs no insertion") {
    Rng rng(157);
    const ComplexMatrix b = oracles::random_basis(rng, 8);
    const ReductionResult pre = parallel_lll_deep(b, {}, SuperIterationBudget{32});
    REQUIRE(pre.report.converged_early);
    ReductionParams p;
    p.delta = 1.0;
    const ReductionResult seq = lll_deep_reduce(pre.basis(), p);
    CHECK(seq.report.swaps == 0);
}

TEST_CASE("hybrid output satisfies the deep conditions") {
    Rng rng(163);
    ReductionParams p;
    p.delta = 0.75;
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix b = oracles::random_basis(rng, 10);
        const ReductionResult res = hybrid_lll_deep(b, p, 2);
        CHECK(is_deep_reduced(res.basis(), p.delta));
        const ComplexMatrix via_u = multiply(b, res.state.transform);
        CHECK(frobenius_distance(via_u, res.basis()) <=
              1e-9 * std::max(1.0, frobenius_norm(res.basis())));
    }
}

TEST_CASE("vblast_order identity and orthogonal ascending order") {
    CHECK(vblast_order(ComplexMatrix::identity(4)).is_identity());

    // orthogonal with distinct norms: sorted ascending, longest column last
    ComplexMatrix b(3, 3);
    b(0, 0) = 5.0;
    b(1, 1) = 1.0;
    b(2, 2) = 3.0;
    const Permutation perm = vblast_order(b);
    CHECK(perm.source == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("vblast_order maximizes the minimum GS norm over all permutations") {
    Rng rng(167);
    for (std::size_t n : {3u, 4u, 5u}) {
        for (int t = 0; t < 40; ++t) {
            const ComplexMatrix b = oracles::random_basis(rng, n);
            const oracles::PermutationScan scan = oracles::scan_all_permutations(b);
            const Permutation perm = vblast_order(b);
            const GsoState s = gso(perm.apply(b));
            double min_gs = 1e300;
            for (double v : s.gs_norms_sq) min_gs = std::min(min_gs, v);
            CHECK(std::sqrt(min_gs) ==
                  doctest::Approx(scan.best_mings).epsilon(1e-9));
        }
    }
}
