#pragma once

// Matrix file format: {"dim": d, "entries": [[re, im], ...]} with d*d pairs in
// row-major order.

#include <filesystem>
#include <stdexcept>
#include <string>

#include "varbound/linalg.hpp"

namespace varbound {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws ParseError for malformed documents and for non-Hermitian input (the
/// message names the worst (i,j) pair).
HermitianOperator parse_matrix_json(const std::string& text);
HermitianOperator read_matrix_file(const std::filesystem::path& path);
std::string matrix_to_json(const HermitianOperator& h);

}  // namespace varbound
