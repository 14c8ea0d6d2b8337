#pragma once

#include <string>

#include <json.hpp>

#include "latred/complex_matrix.hpp"
#include "latred/mimo.hpp"
#include "latred/reduction.hpp"

namespace latred {

// Matrix JSON: {"n": <int>, "cols": [[{"re": f, "im": f}, ...], ...]},
// column j is basis vector j. Readers reject non-square or non-finite input
// with ParseError.
ComplexMatrix matrix_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const ComplexMatrix& b);

ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& b);

nlohmann::json report_to_json(const ReductionReport& report);

BerConfig ber_config_from_json(const nlohmann::json& j);
nlohmann::json ber_config_to_json(const BerConfig& config);
BerConfig read_ber_config_file(const std::string& path);

}  // namespace latred
