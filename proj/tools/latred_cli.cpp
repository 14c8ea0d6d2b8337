// latred command line: reduce | check | bench | ber | compare
//
// Exit codes: 0 success (check: reduced), 1 check failed / internal error,
// 2 parse error, 3 singular basis, 4 iteration cap exceeded.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "latred/errors.hpp"
#include "latred/json_io.hpp"
#include "latred/metrics.hpp"
#include "latred/mimo.hpp"
#include "latred/parallel.hpp"
#include "latred/realify.hpp"
#include "latred/reduction.hpp"
#include "latred/rng.hpp"

using namespace latred;

namespace {

struct ReduceOptions {
    std::string input;
    std::string variant = "lll";
    double delta = 0.75;
    std::uint64_t budget = 0;         // 0 = variant default
    std::uint64_t max_iterations = 0; // 0 = default safety cap
    bool finalize = false;
    std::string output;
    std::string report_path;
};

struct CheckOptions {
    std::string input;
    double delta = 0.75;
    std::string notion = "lll";
};

struct BenchOptions {
    std::vector<std::size_t> n_list;
    double delta = 0.75;
    std::uint64_t trials = 100;
    std::uint64_t seed = 0;
    std::string variant = "effective";
    std::string output;
};

struct CompareOptions {
    std::vector<std::string> variants;
    std::size_t n = 16;
    double delta = 0.75;
    std::uint64_t trials = 50;
    std::uint64_t seed = 0;
    std::uint64_t budget = 2;
    std::string output;
};

ReductionResult run_variant(const ComplexMatrix& b, ReductionKind kind, double delta,
                            std::uint64_t budget, std::uint64_t max_iterations = 0) {
    ReductionParams params;
    params.delta = delta;
    if (max_iterations > 0) params.max_iterations = max_iterations;
    switch (kind) {
        case ReductionKind::Lll:
            return lll_reduce(b, params);
        case ReductionKind::Effective:
            return effective_lll_reduce(b, params);
        case ReductionKind::Deep:
            params.variant = Variant::Deep;
            return lll_deep_reduce(b, params);
        case ReductionKind::ParallelEffective:
            return parallel_effective_lll(
                b, params,
                SuperIterationBudget{budget ? budget : default_parallel_effective_budget(b.cols())});
        case ReductionKind::ParallelDeep:
            return parallel_lll_deep(
                b, params,
                SuperIterationBudget{budget ? budget : default_parallel_deep_budget(b.cols())});
        case ReductionKind::Hybrid:
            return hybrid_lll_deep(b, params, budget ? budget : 2);
        case ReductionKind::None:
            break;
    }
    throw ParseError("reduce: unsupported variant");
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

int cmd_reduce(const ReduceOptions& opt) {
    const ComplexMatrix input = read_matrix_file(opt.input);
    const ReductionKind kind = reduction_kind_from_string(opt.variant);
    ReductionResult res = run_variant(input, kind, opt.delta, opt.budget, opt.max_iterations);
    if (opt.finalize && kind == ReductionKind::Effective)
        finalize_full_size_reduction(res.state, &res.report);

    // serialize the output basis as input * U so that algebraically equal
    // runs produce byte-identical files
    const ComplexMatrix output = multiply(input, res.state.transform);
    nlohmann::json j = matrix_to_json(output);
    write_text(opt.output, j.dump(2) + "\n");

    if (!opt.report_path.empty()) {
        nlohmann::json rj = report_to_json(res.report);
        rj["variant"] = opt.variant;
        rj["delta"] = opt.delta;
        if (kind == ReductionKind::ParallelDeep && opt.budget == 1)
            rj["note"] = "single super-iteration: first-order (DOLLAR-equivalent) pass";
        std::ofstream out(opt.report_path);
        if (!out) throw Error("cannot write file: " + opt.report_path);
        out << rj.dump(2) << '\n';
    }
    return 0;
}

int cmd_check(const CheckOptions& opt) {
    const ComplexMatrix input = read_matrix_file(opt.input);
    Notion notion = Notion::Lll;
    if (opt.notion == "lll")
        notion = Notion::Lll;
    else if (opt.notion == "effective")
        notion = Notion::Effective;
    else if (opt.notion == "deep")
        notion = Notion::Deep;
    else
        throw ParseError("check: unknown notion " + opt.notion);

    const CheckResult result = check_reduced(input, opt.delta, notion);
    std::size_t size_violations = 0, lovasz_violations = 0, sorting_violations = 0;
    for (const ConditionViolation& v : result.violations) {
        switch (v.kind) {
            case ConditionViolation::Kind::SizeReduction:
                ++size_violations;
                std::cout << "FAIL size-reduction at (i=" << v.row + 1 << ", j=" << v.col + 1
                          << ")\n";
                break;
            case ConditionViolation::Kind::Lovasz:
                ++lovasz_violations;
                std::cout << "FAIL lovasz at i=" << v.row + 1 << "\n";
                break;
            case ConditionViolation::Kind::DeepSorting:
                ++sorting_violations;
                std::cout << "FAIL deep-sorting at (k=" << v.row + 1 << ", i=" << v.col + 1
                          << ")\n";
                break;
            default:
                break;
        }
    }
    if (size_violations == 0) std::cout << "PASS size-reduction\n";
    if (notion == Notion::Deep) {
        if (sorting_violations == 0) std::cout << "PASS deep-sorting\n";
    } else {
        if (lovasz_violations == 0) std::cout << "PASS lovasz\n";
    }
    std::cout << (result.reduced ? "reduced" : "not reduced") << "\n";
    return result.reduced ? 0 : 1;
}

int cmd_bench(const BenchOptions& opt) {
    const ReductionKind kind = reduction_kind_from_string(opt.variant);
    std::ostringstream csv;
    csv << "n,delta,trials,mean_K,bound_K,mean_flops_c1,bound_c1\n";
    for (std::size_t n : opt.n_list) {
        double sum_k = 0.0;
        double sum_c1 = 0.0;
        for (std::uint64_t t = 0; t < opt.trials; ++t) {
            Rng rng = Rng::for_trial(opt.seed, n, t);
            const ComplexMatrix b = sample_basis(ChannelModel{n}, rng);
            const ReductionResult res = run_variant(b, kind, opt.delta, 0);
            sum_k += static_cast<double>(res.report.iterations);
            sum_c1 += static_cast<double>(res.report.flops -
                                          res.report.full_size_reduction_flops);
        }
        const ComplexityBounds bounds = flop_bounds(n, opt.delta);
        csv << n << ',' << opt.delta << ',' << opt.trials << ','
            << sum_k / static_cast<double>(opt.trials) << ',' << bounds.k_total_bound << ','
            << sum_c1 / static_cast<double>(opt.trials) << ',' << bounds.flop_bound_c1 << '\n';
    }
    write_text(opt.output, csv.str());
    return 0;
}

int cmd_ber(const std::string& config_path, const std::string& output) {
    const BerConfig cfg = read_ber_config_file(config_path);
    const BerResult result = run_ber(cfg);
    write_text(output, ber_result_csv(result));
    return 0;
}

int cmd_compare(const CompareOptions& opt) {
    std::ostringstream csv;
    csv << "variant,n,delta,trials,mean_wall_ms,mean_swaps,mean_b1_norm\n";
    for (const std::string& name : opt.variants) {
        const ReductionKind kind = reduction_kind_from_string(name);
        double wall_ms = 0.0, swaps = 0.0, b1 = 0.0;
        for (std::uint64_t t = 0; t < opt.trials; ++t) {
            Rng rng = Rng::for_trial(opt.seed, 1, t);
            const ComplexMatrix b = sample_basis(ChannelModel{opt.n}, rng);
            const auto start = std::chrono::steady_clock::now();
            const ReductionResult res = run_variant(b, kind, opt.delta, opt.budget);
            const auto stop = std::chrono::steady_clock::now();
            wall_ms += std::chrono::duration<double, std::milli>(stop - start).count();
            swaps += static_cast<double>(res.report.swaps);
            b1 += std::sqrt(norm_sq(res.basis().col(0)));
        }
        const double trials = static_cast<double>(opt.trials);
        csv << name << ',' << opt.n << ',' << opt.delta << ',' << opt.trials << ','
            << wall_ms / trials << ',' << swaps / trials << ',' << b1 / trials << '\n';
    }
    write_text(opt.output, csv.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex lattice reduction toolkit"};
    app.require_subcommand(1);

    ReduceOptions reduce_opt;
    CLI::App* reduce = app.add_subcommand("reduce", "reduce a basis and write basis + report");
    reduce->add_option("input", reduce_opt.input, "matrix json file")->required();
    reduce->add_option("--variant", reduce_opt.variant,
                       "lll|effective|deep|parallel-effective|parallel-deep|hybrid");
    reduce->add_option("--delta", reduce_opt.delta, "reduction parameter in (1/2, 1]");
    reduce->add_option("--budget", reduce_opt.budget, "super-iteration budget (parallel/hybrid)");
    reduce->add_option("--max-iterations", reduce_opt.max_iterations,
                       "iteration cap (0 = default safety net)");
    reduce->add_flag("--finalize", reduce_opt.finalize,
                     "full size reduction after effective LLL");
    reduce->add_option("--output", reduce_opt.output, "output basis json (default stdout)");
    reduce->add_option("--report", reduce_opt.report_path, "report json path");

    CheckOptions check_opt;
    CLI::App* check = app.add_subcommand("check", "check reducedness conditions");
    check->add_option("input", check_opt.input, "matrix json file")->required();
    check->add_option("--delta", check_opt.delta, "reduction parameter");
    check->add_option("--notion", check_opt.notion, "lll|effective|deep");

    BenchOptions bench_opt;
    CLI::App* bench = app.add_subcommand("bench", "iteration/flop statistics vs bounds");
    bench->add_option("--n-list", bench_opt.n_list, "dimensions")->required()->delimiter(',');
    bench->add_option("--delta", bench_opt.delta, "reduction parameter");
    bench->add_option("--trials", bench_opt.trials, "trials per dimension");
    bench->add_option("--seed", bench_opt.seed, "rng seed")->required();
    bench->add_option("--variant", bench_opt.variant, "reduction variant");
    bench->add_option("--output", bench_opt.output, "csv path (default stdout)");

    std::string ber_config, ber_output;
    CLI::App* ber = app.add_subcommand("ber", "Monte Carlo bit error rate campaign");
    ber->add_option("config", ber_config, "ber config json")->required();
    ber->add_option("--output", ber_output, "csv path (default stdout)");

    CompareOptions compare_opt;
    CLI::App* compare = app.add_subcommand("compare", "wall-time comparison of variants");
    compare->add_option("--variants", compare_opt.variants, "comma separated variant names")
        ->required()
        ->delimiter(',');
    compare->add_option("--n", compare_opt.n, "dimension");
    compare->add_option("--delta", compare_opt.delta, "reduction parameter");
    compare->add_option("--trials", compare_opt.trials, "trials");
    compare->add_option("--seed", compare_opt.seed, "rng seed")->required();
    compare->add_option("--budget", compare_opt.budget, "parallel budget / hybrid iterations");
    compare->add_option("--output", compare_opt.output, "csv path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (reduce->parsed()) return cmd_reduce(reduce_opt);
        if (check->parsed()) return cmd_check(check_opt);
        if (bench->parsed()) return cmd_bench(bench_opt);
        if (ber->parsed()) return cmd_ber(ber_config, ber_output);
        if (compare->parsed()) return cmd_compare(compare_opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidDeltaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedOrderError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SingularBasisError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IterationCapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
