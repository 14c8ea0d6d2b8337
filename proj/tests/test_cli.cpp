// Drives the installed CLI binary end to end through temp files.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "latred/json_io.hpp"
#include "latred/realify.hpp"
#include "latred/rng.hpp"
#include "oracles.hpp"

#ifndef LATRED_CLI_PATH
#error "LATRED_CLI_PATH must point at the latred binary"
#endif

namespace fs = std::filesystem;
using namespace latred;

namespace {

struct CliRun {
    int exit_code;
    std::string output;
};

CliRun run_cli(const std::string& args) {
    const fs::path out_file = fs::temp_directory_path() / "latred_cli_out.txt";
    const std::string cmd =
        std::string(LATRED_CLI_PATH) + " " + args + " > " + out_file.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::stringstream buf;
    buf << in.rdbuf();
    return {WEXITSTATUS(status), buf.str()};
}

fs::path temp_json(const std::string& name, const ComplexMatrix& b) {
    const fs::path path = fs::temp_directory_path() / name;
    write_matrix_file(path.string(), b);
    return path;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("reduce on the identity is a fixed point") {
    const fs::path in = temp_json("cli_id4.json", ComplexMatrix::identity(4));
    const fs::path out = fs::temp_directory_path() / "cli_id4.reduced.json";
    const fs::path rep = fs::temp_directory_path() / "cli_id4.report.json";
    const CliRun r = run_cli("reduce " + in.string() + " --variant lll --delta 0.75 --output " +
                             out.string() + " --report " + rep.string());
    CHECK(r.exit_code == 0);
    CHECK(read_matrix_file(out.string()) == ComplexMatrix::identity(4));
    const auto report = nlohmann::json::parse(slurp(rep));
    CHECK(report.at("swaps").get<int>() == 0);
    CHECK(report.at("iterations").get<int>() == 3);
}

TEST_CASE("effective plus finalize is byte-identical to standard LLL output") {
    Rng rng(501);
    const fs::path in = temp_json("cli_rand6.json", oracles::random_basis(rng, 6));
    const fs::path out_eff = fs::temp_directory_path() / "cli_rand6.eff.json";
    const fs::path out_lll = fs::temp_directory_path() / "cli_rand6.lll.json";
    CHECK(run_cli("reduce " + in.string() + " --variant effective --finalize --output " +
                  out_eff.string())
              .exit_code == 0);
    CHECK(run_cli("reduce " + in.string() + " --variant lll --output " + out_lll.string())
              .exit_code == 0);
    CHECK(slurp(out_eff) == slurp(out_lll));
}

TEST_CASE("single-budget parallel-deep report carries the first-order note") {
    Rng rng(503);
    const fs::path in = temp_json("cli_rand5.json", oracles::random_basis(rng, 5));
    const fs::path rep = fs::temp_directory_path() / "cli_rand5.report.json";
    const fs::path out = fs::temp_directory_path() / "cli_rand5.out.json";
    const CliRun r = run_cli("reduce " + in.string() +
                             " --variant parallel-deep --budget 1 --output " + out.string() +
                             " --report " + rep.string());
    CHECK(r.exit_code == 0);
    const auto report = nlohmann::json::parse(slurp(rep));
    CHECK(report.contains("note"));
    CHECK(report.at("super_iterations").get<int>() == 1);
}

TEST_CASE("check passes the identity and reduced outputs, fails the counterexample") {
    const fs::path id = temp_json("cli_check_id.json", ComplexMatrix::identity(3));
    for (const char* notion : {"lll", "effective", "deep"}) {
        const CliRun r = run_cli("check " + id.string() + " --notion " + notion);
        CHECK(r.exit_code == 0);
        CHECK(r.output.find("reduced") != std::string::npos);
    }

    // the realified Gauss-reduced counterexample fails the delta = 1 Lovasz check
    ComplexMatrix gauss(2, 2);
    gauss(0, 0) = 1.0;
    gauss(0, 1) = {0.5, 0.5};
    gauss(1, 1) = std::sqrt(2.0) / 2.0;
    const fs::path cx = temp_json("cli_counter.json", realify_local(gauss));
    const CliRun fail = run_cli("check " + cx.string() + " --delta 1.0 --notion lll");
    CHECK(fail.exit_code == 1);
    CHECK(fail.output.find("FAIL lovasz at i=3") != std::string::npos);
    CHECK(fail.output.find("not reduced") != std::string::npos);

    // round trip: the reduce output re-checks clean
    Rng rng(509);
    const fs::path in = temp_json("cli_round.json", oracles::random_basis(rng, 6));
    const fs::path out = fs::temp_directory_path() / "cli_round.out.json";
    CHECK(run_cli("reduce " + in.string() + " --variant lll --output " + out.string())
              .exit_code == 0);
    CHECK(run_cli("check " + out.string() + " --delta 0.75 --notion lll").exit_code == 0);
}

TEST_CASE("bench output is deterministic and within the iteration bound") {
    const std::string args = "bench --n-list 4,8 --trials 100 --seed 1 --variant effective";
    const CliRun r1 = run_cli(args);
    const CliRun r2 = run_cli(args);
    CHECK(r1.exit_code == 0);
    CHECK(r1.output == r2.output);

    std::istringstream rows(r1.output);
    std::string line;
    std::getline(rows, line);  // header
    CHECK(line == "n,delta,trials,mean_K,bound_K,mean_flops_c1,bound_c1");
    while (std::getline(rows, line)) {
        std::istringstream fields(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(fields, cell, ',')) v.push_back(std::stod(cell));
        REQUIRE(v.size() == 7);
        CHECK(v[3] <= v[4]);  // mean_K <= bound_K
        CHECK(v[5] <= v[6]);  // mean_flops_c1 <= bound_c1
    }
}

TEST_CASE("ber command is deterministic") {
    const fs::path cfg = fs::temp_directory_path() / "cli_ber.json";
    {
        std::ofstream out(cfg);
        out << R"({"n":4,"qam_order":16,"snr_db":[14.0,18.0],"trials":500,)"
            << R"("variant":"lll","detector":"sic","seed":3})";
    }
    const CliRun r1 = run_cli("ber " + cfg.string());
    const CliRun r2 = run_cli("ber " + cfg.string());
    CHECK(r1.exit_code == 0);
    CHECK(r1.output == r2.output);
    CHECK(r1.output.find("snr_db,trials,bit_errors,ber,variant,budget,detector") !=
          std::string::npos);
}

TEST_CASE("compare runs both variants") {
    const CliRun r = run_cli("compare --variants deep,hybrid --n 12 --trials 5 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("deep,12") != std::string::npos);
    CHECK(r.output.find("hybrid,12") != std::string::npos);
}

TEST_CASE("exit codes: parse, singular, iteration cap, bad flags") {
    CHECK(run_cli("reduce /nonexistent/file.json").exit_code == 2);

    ComplexMatrix singular(2, 2);
    singular(0, 0) = 1.0;
    singular(1, 0) = 1.0;
    singular(0, 1) = 1.0;
    singular(1, 1) = 1.0;
    const fs::path bad = temp_json("cli_singular.json", singular);
    CHECK(run_cli("reduce " + bad.string()).exit_code == 3);
    CHECK(run_cli("check " + bad.string()).exit_code == 3);

    Rng rng(521);
    const fs::path in = temp_json("cli_cap.json", oracles::random_basis(rng, 8));
    CHECK(run_cli("reduce " + in.string() + " --max-iterations 1").exit_code == 4);

    CHECK(run_cli("reduce " + in.string() + " --variant bogus").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);

    // non-square matrix file
    const fs::path nonsquare = fs::temp_directory_path() / "cli_nonsquare.json";
    {
        std::ofstream out(nonsquare);
        out << R"({"n": 2, "cols": [[{"re":1,"im":0},{"re":0,"im":0}]]})";
    }
    CHECK(run_cli("reduce " + nonsquare.string()).exit_code == 2);
}
