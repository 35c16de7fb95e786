#include "roc/matrix_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace roc {

json matrix_to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json re_row = json::array();
    json im_row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      re_row.push_back(m(i, j).real());
      im_row.push_back(m(i, j).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {

RealMatrix read_part(const json& j, const char* key, int d) {
  const json& rows = j.at(key);
  if (!rows.is_array() || static_cast<int>(rows.size()) != d) {
    throw std::invalid_argument(std::string("matrix field '") + key + "' must have " +
                                std::to_string(d) + " rows");
  }
  RealMatrix out(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw std::invalid_argument(std::string("matrix field '") + key + "' row " +
                                  std::to_string(r) + " must have " + std::to_string(d) +
                                  " entries");
    }
    for (int c = 0; c < d; ++c) {
      if (!row[c].is_number()) {
        throw std::invalid_argument(std::string("matrix field '") + key + "' entry (" +
                                    std::to_string(r) + "," + std::to_string(c) +
                                    ") is not a number");
      }
      out(r, c) = row[c].get<double>();
    }
  }
  return out;
}

}  // namespace

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("matrix must be a JSON object");
  if (!j.contains("dim") || !j.at("dim").is_number_integer()) {
    throw std::invalid_argument("matrix is missing integer field 'dim'");
  }
  const int d = j.at("dim").get<int>();
  if (d < 1) throw std::invalid_argument("matrix 'dim' must be positive");
  if (!j.contains("re")) throw std::invalid_argument("matrix is missing field 're'");
  const RealMatrix re = read_part(j, "re", d);
  const RealMatrix im = j.contains("im") ? read_part(j, "im", d) : RealMatrix::Zero(d, d);
  ComplexMatrix m(d, d);
  m.real() = re;
  m.imag() = im;
  return m;
}

HermitianMatrix hermitian_from_json(const json& j) { return HermitianMatrix(matrix_from_json(j)); }

DensityMatrix state_from_json(const json& j) { return DensityMatrix(hermitian_from_json(j)); }

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

}  // namespace roc
