#include "varbound/bound_numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <tuple>

namespace varbound {

namespace {

// Precomputed pieces of the shifted family so each evaluation is one matrix
// assembly plus one eigensolve.
struct ShiftedFamily {
  const WeightedPair& pair;
  CMatrix base;  // a X^2 + b Y^2

  explicit ShiftedFamily(const WeightedPair& p)
      : pair(p), base(p.a * p.x.square().matrix() + p.b * p.y.square().matrix()) {}

  HermitianOperator at(double x, double y) const {
    CMatrix m = base - 2.0 * (pair.a * x) * pair.x.matrix() - 2.0 * (pair.b * y) * pair.y.matrix();
    m.diagonal().array() += pair.a * x * x + pair.b * y * y;
    return HermitianOperator::hermitian_part(m);
  }

  double lowest(double x, double y) const { return eigenvalues(at(x, y))(0); }
};

double degeneracy_tolerance(const Spectrum& s) {
  return 1e-10 * std::max(1.0, std::max(std::abs(s.min()), std::abs(s.max())));
}

// Lowest value on a small ring around (x, y), when it beats `value` by more
// than roundoff. A fixed point of the expectation map can be a saddle or a
// maximum (the origin for angular momentum pairs); this is the way out.
std::optional<std::pair<double, double>> descent_probe(const ShiftedFamily& family, double x, double y, double value,
                                                       double scale) {
  constexpr int kProbes = 8;
  const double radius = 1e-3 * scale;
  double best = value - 1e-10 * std::max(1.0, std::abs(value));
  std::optional<std::pair<double, double>> out;
  for (int k = 0; k < kProbes; ++k) {
    const double t = 2 * std::numbers::pi * (k + 0.5) / kProbes;
    const double px = x + radius * std::cos(t);
    const double py = y + radius * std::sin(t);
    const double v = family.lowest(px, py);
    if (v < best) {
      best = v;
      out = std::pair{px, py};
    }
  }
  return out;
}

StartOutcome polish(const ShiftedFamily& family, double x0, double y0, double scale, const NumericConfig& cfg) {
  const WeightedPair& pair = family.pair;
  double x = x0;
  double y = y0;
  Spectrum s = eig(family.at(x, y));
  double value = s.min();
  CVector psi = s.eigenvectors.col(0);
  int it = 0;
  int escapes = 0;
  bool converged = false;
  while (it < cfg.max_iterations) {
    ++it;
    // Fixed-point map: move the shift to the expectation values on the lowest
    // eigenvector. In a degenerate lowest eigenspace every basis vector is a
    // candidate and the one giving the smallest next value wins.
    const double tol = degeneracy_tolerance(s);
    double best_next = std::numeric_limits<double>::infinity();
    double nx = x;
    double ny = y;
    for (int k = 0; k < s.size() && s.eigenvalues(k) - s.min() <= tol; ++k) {
      const CVector v = s.eigenvectors.col(k);
      const double cx = expectation(pair.x, v);
      const double cy = expectation(pair.y, v);
      const double next = (k == 0 && s.size() > 1 && s.eigenvalues(1) - s.min() > tol)
                              ? -std::numeric_limits<double>::infinity()
                              : family.lowest(cx, cy);
      if (next < best_next) {
        best_next = next;
        nx = cx;
        ny = cy;
      }
    }
    const double step = std::hypot(nx - x, ny - y);
    x = nx;
    y = ny;
    s = eig(family.at(x, y));
    const double dv = std::abs(s.min() - value);
    value = s.min();
    psi = s.eigenvectors.col(0);
    if (dv <= cfg.value_tol && step <= cfg.step_tol) {
      const auto probe = escapes < 4 ? descent_probe(family, x, y, value, scale) : std::nullopt;
      if (!probe) {
        converged = true;
        break;
      }
      ++escapes;
      std::tie(x, y) = *probe;
      s = eig(family.at(x, y));
      value = s.min();
      psi = s.eigenvectors.col(0);
    }
  }
  return StartOutcome{x0, y0, value, x, y, it, converged, psi};
}

}  // namespace

WeightedPair::WeightedPair(HermitianOperator x_op, HermitianOperator y_op, double wa, double wb)
    : x(std::move(x_op)), y(std::move(y_op)), a(wa), b(wb) {
  if (x.dim() != y.dim()) throw DimensionMismatch("observables must have equal dimensions");
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("weights must be positive");
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Numeric:
      return "numeric";
    case Method::Certified:
      return "certified";
    case Method::Exact:
      return "exact";
  }
  return "unknown";
}

HermitianOperator shifted_operator(const WeightedPair& pair, double x, double y) {
  return ShiftedFamily(pair).at(x, y);
}

ShiftedMinimum shifted_minimum(const WeightedPair& pair, double x, double y) {
  const Spectrum s = eig(shifted_operator(pair, x, y));
  const CVector v = s.eigenvectors.col(0);
  return ShiftedMinimum{s.min(), 2.0 * pair.a * (x - expectation(pair.x, v)),
                        2.0 * pair.b * (y - expectation(pair.y, v)), v};
}

std::vector<StartOutcome> numeric_multistart(const WeightedPair& pair, const NumericConfig& config) {
  if (config.grid < 1 || config.max_iterations < 1)
    throw std::invalid_argument("numeric config requires positive grid and iteration cap");
  const ShiftedFamily family(pair);
  const Eigen::VectorXd ex = eigenvalues(pair.x);
  const Eigen::VectorXd ey = eigenvalues(pair.y);
  // Optimal shifts are expectation values, so they lie inside the spectral
  // intervals of X and Y.
  const double x_lo = ex(0);
  const double x_hi = ex(ex.size() - 1);
  const double y_lo = ey(0);
  const double y_hi = ey(ey.size() - 1);
  const double scale = std::max({1e-12, x_hi - x_lo, y_hi - y_lo});
  std::vector<StartOutcome> out;
  out.reserve(static_cast<std::size_t>(config.grid) * config.grid);
  for (int i = 0; i < config.grid; ++i) {
    const double tx = config.grid == 1 ? 0.5 : static_cast<double>(i) / (config.grid - 1);
    for (int k = 0; k < config.grid; ++k) {
      const double ty = config.grid == 1 ? 0.5 : static_cast<double>(k) / (config.grid - 1);
      out.push_back(polish(family, x_lo + tx * (x_hi - x_lo), y_lo + ty * (y_hi - y_lo), scale, config));
    }
  }
  return out;
}

BoundResult bound_numeric(const WeightedPair& pair, const NumericConfig& config) {
  const std::vector<StartOutcome> starts = numeric_multistart(pair, config);
  const StartOutcome* best = &starts.front();
  int nonconverged = 0;
  for (const StartOutcome& s : starts) {
    if (!s.converged) ++nonconverged;
    if (s.value < best->value) best = &s;
  }
  BoundResult r;
  r.method = Method::Numeric;
  r.value = best->value;
  r.witness = best->vector;
  r.min_x = expectation(pair.x, best->vector);
  r.min_y = expectation(pair.y, best->vector);
  r.error = 0.0;
  r.metadata["starts"] = std::to_string(starts.size());
  r.metadata["nonconverged"] = std::to_string(nonconverged);
  return r;
}

double weighted_family(int two_j, double alpha, const NumericConfig& config) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  const AngularMomentum j = angular_momentum(two_j);
  return bound_numeric(WeightedPair(j.jx, j.jy, 1.0, alpha), config).value;
}

}  // namespace varbound
