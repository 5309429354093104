#pragma once

#include <optional>
#include <vector>

#include "varbound/exact/polynomial.hpp"

namespace varbound::exact {

struct RealPoint {
  std::vector<long double> values;  ///< one per variable, last variable included
};

struct BackSubstitutionTolerance {
  double imaginary = 1e-6;  ///< |Im r| <= imaginary * (1 + |r|) counts as real
  double residual = 1e-6;   ///< |p| <= residual * (sum of |terms|) counts as zero
};

/// With the last variable fixed at `last`, solves the system level by level
/// (second-to-last variable first). At each level the lowest-degree polynomial
/// supplies candidate roots and every other polynomial of that level must
/// vanish there. Returns the first real point found.
std::optional<RealPoint> real_solution_at(const std::vector<Polynomial>& system, long double last,
                                          const BackSubstitutionTolerance& tol = {});

/// Real roots of a univariate polynomial given by long double coefficients
/// (constant term first), via the companion matrix and Newton polishing.
std::vector<long double> near_real_roots(const std::vector<long double>& coeffs, double imaginary_tol);

}  // namespace varbound::exact
