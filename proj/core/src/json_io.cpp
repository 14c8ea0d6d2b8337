#include "latred/json_io.hpp"

#include <cmath>
#include <fstream>

#include "latred/errors.hpp"

namespace latred {

using nlohmann::json;

ComplexMatrix matrix_from_json(const json& j) {
    try {
        if (!j.is_object() || !j.contains("n") || !j.contains("cols"))
            throw ParseError("matrix json: expected object with \"n\" and \"cols\"");
        const auto n = j.at("n").get<std::size_t>();
        if (n == 0) throw ParseError("matrix json: empty matrix");
        const json& cols = j.at("cols");
        if (!cols.is_array() || cols.size() != n)
            throw ParseError("matrix json: input is not square");
        ComplexMatrix b(n, n);
        for (std::size_t c = 0; c < n; ++c) {
            const json& col = cols.at(c);
            if (!col.is_array() || col.size() != n)
                throw ParseError("matrix json: input is not square");
            for (std::size_t r = 0; r < n; ++r) {
                const json& e = col.at(r);
                if (!e.is_object() || !e.contains("re") || !e.contains("im"))
                    throw ParseError("matrix json: entry must be {\"re\", \"im\"}");
                const double re = e.at("re").get<double>();
                const double im = e.at("im").get<double>();
                if (!std::isfinite(re) || !std::isfinite(im))
                    throw ParseError("matrix json: non-finite entry");
                b(r, c) = {re, im};
            }
        }
        return b;
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix json: ") + e.what());
    }
}

json matrix_to_json(const ComplexMatrix& b) {
    json cols = json::array();
    for (std::size_t c = 0; c < b.cols(); ++c) {
        json col = json::array();
        for (std::size_t r = 0; r < b.rows(); ++r)
            col.push_back({{"re", b(r, c).real()}, {"im", b(r, c).imag()}});
        cols.push_back(std::move(col));
    }
    return {{"n", b.cols()}, {"cols", std::move(cols)}};
}

ComplexMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix json: ") + e.what());
    }
    return matrix_from_json(j);
}

void write_matrix_file(const std::string& path, const ComplexMatrix& b) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write matrix file: " + path);
    out << matrix_to_json(b).dump(2) << '\n';
}

namespace {

json gaussian_matrix_to_json(const GaussianIntegerMatrix& u) {
    json cols = json::array();
    for (std::size_t c = 0; c < u.cols(); ++c) {
        json col = json::array();
        for (std::size_t r = 0; r < u.rows(); ++r)
            col.push_back({{"re", u(r, c).re}, {"im", u(r, c).im}});
        cols.push_back(std::move(col));
    }
    return cols;
}

}  // namespace

json report_to_json(const ReductionReport& report) {
    json j;
    j["iterations"] = report.iterations;
    j["positive_tests"] = report.positive_tests;
    j["negative_tests"] = report.negative_tests;
    j["swaps"] = report.swaps;
    j["flops"] = report.flops;
    j["full_size_reduction_flops"] = report.full_size_reduction_flops;
    j["potential_trace"] = report.potential_trace;
    j["max_gs_trace"] = report.max_gs_trace;
    j["min_gs_trace"] = report.min_gs_trace;
    j["super_iterations"] = report.super_iterations;
    j["converged_early"] = report.converged_early;
    j["transform"] = gaussian_matrix_to_json(report.transform);
    return j;
}

BerConfig ber_config_from_json(const json& j) {
    BerConfig cfg;
    try {
        cfg.n = j.at("n").get<std::size_t>();
        cfg.qam_order = j.at("qam_order").get<unsigned>();
        cfg.snr_db = j.at("snr_db").get<std::vector<double>>();
        cfg.trials = j.at("trials").get<std::uint64_t>();
        cfg.variant = reduction_kind_from_string(j.at("variant").get<std::string>());
        cfg.detector = detector_from_string(j.at("detector").get<std::string>());
        cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
        if (j.contains("budget")) cfg.budget = j.at("budget").get<std::uint64_t>();
        if (j.contains("mmse")) cfg.mmse_extension = j.at("mmse").get<bool>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("ber config: ") + e.what());
    }
    return cfg;
}

json ber_config_to_json(const BerConfig& cfg) {
    return {{"n", cfg.n},
            {"qam_order", cfg.qam_order},
            {"snr_db", cfg.snr_db},
            {"trials", cfg.trials},
            {"variant", to_string(cfg.variant)},
            {"detector", to_string(cfg.detector)},
            {"seed", cfg.seed},
            {"delta", cfg.delta},
            {"budget", cfg.budget},
            {"mmse", cfg.mmse_extension}};
}

BerConfig read_ber_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(std::string("ber config json: ") + e.what());
    }
    return ber_config_from_json(j);
}

}  // namespace latred
