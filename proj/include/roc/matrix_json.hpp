#pragma once

// Shared on-disk matrix format:
//   {"dim": d, "re": [[...d x d...]], "im": [[...d x d...]]}
// Row-major, decimal doubles. "im" may be omitted for real matrices.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "roc/linalg.hpp"

namespace roc {

using json = nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
/// Throws std::invalid_argument describing the first malformed field.
ComplexMatrix matrix_from_json(const json& j);
HermitianMatrix hermitian_from_json(const json& j);
DensityMatrix state_from_json(const json& j);

/// Reads and parses a JSON file. Parse errors are rethrown as
/// std::invalid_argument carrying the file name and line/column.
json read_json_file(const std::filesystem::path& path);

}  // namespace roc
