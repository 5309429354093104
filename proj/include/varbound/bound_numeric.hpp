#pragma once

// Tight numeric lower bound for a*Var(X) + b*Var(Y): global minimization over
// shifts (x, y) of the smallest eigenvalue of
//   a X^2 + b Y^2 - 2(a x X + b y Y) + (a x^2 + b y^2) 1.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "varbound/linalg.hpp"

namespace varbound {

struct WeightedPair {
  HermitianOperator x;
  HermitianOperator y;
  double a = 1.0;
  double b = 1.0;

  WeightedPair(HermitianOperator x_op, HermitianOperator y_op, double wa = 1.0, double wb = 1.0);
  int dim() const { return x.dim(); }
};

enum class Method { Numeric, Certified, Exact };
std::string to_string(Method m);

struct BoundResult {
  double value = 0.0;
  double min_x = 0.0;  ///< minimizer, x* = <X> on the witness
  double min_y = 0.0;
  CVector witness;     ///< pure witness state (normalized)
  Method method = Method::Numeric;
  double error = 0.0;  ///< 0 means tight up to solver tolerance
  std::map<std::string, std::string> metadata;

  DensityState witness_state() const { return DensityState::pure(witness); }
};

struct NumericConfig {
  int grid = 9;              ///< multistarts = grid * grid
  int max_iterations = 500;  ///< per start
  double value_tol = 1e-12;
  double step_tol = 1e-10;
};

HermitianOperator shifted_operator(const WeightedPair& pair, double x, double y);

/// Smallest eigenvalue of the shifted operator together with its gradient
/// (2a(x - <X>), 2b(y - <Y>)) taken on the lowest eigenvector.
struct ShiftedMinimum {
  double value;
  double grad_x;
  double grad_y;
  CVector vector;
};
ShiftedMinimum shifted_minimum(const WeightedPair& pair, double x, double y);

/// One polished multistart.
struct StartOutcome {
  double start_x;
  double start_y;
  double value;
  double x;
  double y;
  int iterations;
  bool converged;
  CVector vector;
};

/// All multistart outcomes in grid order (deterministic).
std::vector<StartOutcome> numeric_multistart(const WeightedPair& pair, const NumericConfig& config = {});

/// Best of numeric_multistart. metadata["nonconverged"] counts starts that hit
/// the iteration cap; the best value is still returned.
BoundResult bound_numeric(const WeightedPair& pair, const NumericConfig& config = {});

/// Var(J_X) + alpha Var(J_Y) bound for spin j = two_j / 2.
double weighted_family(int two_j, double alpha, const NumericConfig& config = {});

}  // namespace varbound
