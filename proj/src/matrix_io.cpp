#include "varbound/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace varbound {

HermitianOperator parse_matrix_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries"))
    throw ParseError("matrix document must be an object with \"dim\" and \"entries\"");
  if (!doc["dim"].is_number_integer() || doc["dim"].get<long>() < 1)
    throw ParseError("\"dim\" must be a positive integer");
  const int dim = doc["dim"].get<int>();
  const auto& entries = doc["entries"];
  if (!entries.is_array() || entries.size() != static_cast<std::size_t>(dim) * dim) {
    std::ostringstream os;
    os << "\"entries\" must be an array of " << dim * dim << " [re, im] pairs";
    throw ParseError(os.str());
  }
  CMatrix m(dim, dim);
  for (int k = 0; k < dim * dim; ++k) {
    const auto& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      std::ostringstream os;
      os << "entry " << k << " (row " << k / dim << ", col " << k % dim << ") is not a [re, im] number pair";
      throw ParseError(os.str());
    }
    m(k / dim, k % dim) = Complex(e[0].get<double>(), e[1].get<double>());
  }
  try {
    return HermitianOperator(m);
  } catch (const NotHermitian& e) {
    throw ParseError(e.what());
  }
}

HermitianOperator read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_matrix_json(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string matrix_to_json(const HermitianOperator& h) {
  nlohmann::json doc;
  doc["dim"] = h.dim();
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < h.dim(); ++i)
    for (int j = 0; j < h.dim(); ++j) entries.push_back({h(i, j).real(), h(i, j).imag()});
  doc["entries"] = std::move(entries);
  return doc.dump();
}

}  // namespace varbound
