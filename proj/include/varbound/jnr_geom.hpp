#pragma once

// Sampled joint numerical ranges W(F1, F2), W(X, X^2), W(X, Y, X^2 + Y^2) and
// the dual curve of W(X, Y).

#include <vector>

#include <Eigen/Dense>

#include "varbound/geometry2d.hpp"
#include "varbound/linalg.hpp"

namespace varbound {

/// Boundary samples of a joint numerical range. Each point comes from a
/// maximal eigenvector of the direction-weighted operator; `directions[k]` is
/// the direction that produced `points[k]`.
struct JNRPolytope {
  int dimension = 2;
  std::vector<Eigen::VectorXd> points;
  std::vector<Eigen::VectorXd> directions;
  /// Only filled by jnr3d_variance_surface: z - x^2 - y^2 per point.
  std::vector<double> shades;

  /// Convex polygon through the 2D points (ccw).
  geo::Polygon polygon() const;
  /// 2D only: how far the true range can reach outside polygon(). Between two
  /// consecutive samples the boundary stays inside the triangle cut off by
  /// their support lines, so the largest apex height over the chord bounds it.
  double sampling_gap() const;
};

struct DualCurve {
  std::vector<Eigen::Vector2d> points;
  /// The traceless shift applied: the curve belongs to (X - shift_x, Y - shift_y).
  double shift_x = 0.0;
  double shift_y = 0.0;
};

class DualUnbounded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Uniform angles on [0, 2pi). Flat faces (degenerate top eigenspace) emit both
/// endpoints, found by extremizing the tangential coordinate in the eigenspace.
JNRPolytope jnr2d(const HermitianOperator& f1, const HermitianOperator& f2, int n_directions);

/// Exact polygon W(X, X^2) = hull of (lambda_i, lambda_i^2).
JNRPolytope jnr_xx2(const HermitianOperator& x);

/// Boundary cloud of W(X, Y, X^2 + Y^2) over a Fibonacci sphere lattice, with
/// the variance-sum shade attached to each point.
JNRPolytope jnr3d_variance_surface(const HermitianOperator& x, const HermitianOperator& y, int n_directions);

/// Dual of W(X, Y) after shifting both operators to be traceless:
/// (cos t, sin t) / lambda_max(cos t X + sin t Y).
DualCurve dual2d(const HermitianOperator& x, const HermitianOperator& y, int n_directions);

/// Unit directions of the Fibonacci lattice on S^2.
std::vector<Eigen::Vector3d> fibonacci_sphere(int n);

}  // namespace varbound
