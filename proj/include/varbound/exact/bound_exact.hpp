#pragma once

// Exact bound: stationarity system -> elimination to a polynomial in λ ->
// factorization and real-root isolation -> certification of the smallest
// root whose companion variables are real, cross-checked against the numeric
// engine.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "varbound/bound_numeric.hpp"
#include "varbound/exact/char_poly.hpp"
#include "varbound/exact/groebner.hpp"
#include "varbound/exact/univariate.hpp"

namespace varbound::exact {

enum class Elimination { Auto, Groebner, Resultant };

struct ExactConfig {
  bool symmetry_reduce = false;
  Elimination elimination = Elimination::Auto;  ///< Auto: resultant for reduced systems
  int precision_bits = 256;
  Rational isolation_width = Rational(1, Integer("1000000000000000000000000000000"));
  double cross_check_tol = 1e-7;
  ExpressionBudget budget = budget_from_environment();
  NumericConfig numeric;
};

struct Candidate {
  IsolatedRoot root;
  UPoly factor;
  bool real_solution = false;  ///< companion variables admit a real solution
  bool agrees = false;         ///< within cross_check_tol of the numeric bound
};

struct ExactResult {
  BoundResult bound;
  UPoly eliminant;  ///< primitive integer form
  UPoly factor;     ///< irreducible factor holding the certified root
  std::optional<Rational> exact_value;
  double numeric_value = 0.0;
  std::vector<Candidate> candidates;  ///< ascending; the scan stops past the numeric bound
};

/// No candidate root could be certified.
class CertificationFailure : public std::runtime_error {
 public:
  CertificationFailure(const std::string& what, std::vector<Candidate> candidates, double numeric_value)
      : std::runtime_error(what), candidates_(std::move(candidates)), numeric_value_(numeric_value) {}
  const std::vector<Candidate>& candidates() const { return candidates_; }
  double numeric_value() const { return numeric_value_; }

 private:
  std::vector<Candidate> candidates_;
  double numeric_value_;
};

/// The system has no nonzero eliminant in λ alone.
class PositiveDimensional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Runs the pipeline on a prepared system ({D, ∂x D[, ∂y D]}), using the
/// operators only for the numeric cross-check and the witness.
ExactResult bound_exact_system(const std::vector<Polynomial>& system, const HermitianOperator& X,
                               const HermitianOperator& Y, const ExactConfig& config = {});

/// Exact-entry operators: the system is expanded symbolically.
ExactResult bound_exact(const GaussianRationalMatrix& X, const GaussianRationalMatrix& Y,
                        const ExactConfig& config = {});
/// Floating operators: the system is recovered by interpolation.
ExactResult bound_exact(const HermitianOperator& X, const HermitianOperator& Y, const ExactConfig& config = {});
/// (J_X, J_Y) for j = two_j / 2, always symmetry reduced.
ExactResult bound_exact_angular(int two_j, ExactConfig config = {});

/// X = diag(1, -1), Y = [[a, b], [b*, -a]].
std::pair<GaussianRationalMatrix, GaussianRationalMatrix> qubit_pair(const Rational& a, const GaussianRational& b);
/// Closed-form bound for qubit_pair, evaluated without cancellation.
double qubit_bound(double a, std::complex<double> b);

/// Expected minimal-polynomial order for j = n / 2:
/// o(n) = (6 + n(3n + 2) - (-1)^n (n(n - 2) + 6)) / 16.
int minimal_poly_degree_check(int n);

}  // namespace varbound::exact
