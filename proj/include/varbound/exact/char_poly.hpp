#pragma once

// The stationarity system of the shifted operator
//   D(x, y, λ) = det(X² + Y² - 2(xX + yY) + (x² + y² - λ)𝟙)
// together with its partial derivatives in x and y. With symmetry reduction
// (rotationally symmetric pairs) y is fixed at 0 and the system lives in
// Q[x, λ].

#include <stdexcept>
#include <string>
#include <vector>

#include "varbound/exact/polynomial.hpp"
#include "varbound/exact/rational.hpp"
#include "varbound/linalg.hpp"

namespace varbound::exact {

class GaussianRationalMatrix {
 public:
  explicit GaussianRationalMatrix(int dim = 0);
  /// Row-major entries; throws std::invalid_argument unless exactly Hermitian.
  GaussianRationalMatrix(int dim, std::vector<GaussianRational> entries);
  /// Exact binary values of the stored doubles.
  static GaussianRationalMatrix from_operator(const HermitianOperator& op);

  int dim() const { return dim_; }
  const GaussianRational& operator()(int i, int j) const { return e_[i * dim_ + j]; }
  /// Sets (i, j) and its mirror (j, i) to the conjugate.
  void set(int i, int j, const GaussianRational& v);

  GaussianRationalMatrix operator*(const GaussianRationalMatrix& o) const;
  GaussianRationalMatrix operator+(const GaussianRationalMatrix& o) const;
  HermitianOperator to_operator() const;

 private:
  int dim_;
  std::vector<GaussianRational> e_;
};

/// Raised when D acquires a nonzero imaginary coefficient.
class NonRealCoefficient : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when interpolated coefficients fail rational reconstruction or
/// re-verification.
class ReconstructionError : public std::runtime_error {
 public:
  ReconstructionError(const std::string& what, double residual) : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// Variable lists used by the system: {x, y, λ}, or {x, λ} when reduced.
std::vector<std::string> system_variables(bool symmetry_reduce);

/// {D, ∂x D, ∂y D}, or {D, ∂x D} with y = 0 under symmetry reduction.
/// D is expanded exactly by memoized minors over Q(i)[x, y, λ].
std::vector<Polynomial> char_poly_system(const GaussianRationalMatrix& X, const GaussianRationalMatrix& Y,
                                         bool symmetry_reduce);

/// Same system recovered from extended-precision determinants on an integer
/// tensor grid, continued-fraction reconstruction of every coefficient and
/// re-verification at ten fresh points.
std::vector<Polynomial> char_poly_interpolated(const HermitianOperator& X, const HermitianOperator& Y,
                                               int precision_bits, bool symmetry_reduce);
/// Spin pair (J_X, J_Y) for j = two_j / 2, built directly at high precision.
std::vector<Polynomial> char_poly_interpolated_angular(int two_j, int precision_bits, bool symmetry_reduce);

}  // namespace varbound::exact
