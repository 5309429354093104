#include "varbound/jnr_geom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace varbound {

namespace {

double spectral_tolerance(const Spectrum& s) {
  return 1e-9 * std::max(1.0, std::max(std::abs(s.min()), std::abs(s.max())));
}

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace

geo::Polygon JNRPolytope::polygon() const {
  std::vector<geo::Point> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.push_back({p(0), p(1)});
  return geo::convex_hull(std::move(pts));
}

double JNRPolytope::sampling_gap() const {
  if (dimension != 2) throw std::logic_error("sampling_gap is defined for 2D samples");
  double worst = 0.0;
  const std::size_t m = points.size();
  if (m < 2 || directions.size() != m) return 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = (i + 1) % m;
    const Eigen::VectorXd& u = directions[i];
    const Eigen::VectorXd& w = directions[j];
    const double det = u[0] * w[1] - u[1] * w[0];
    const Eigen::Vector2d chord(points[j][0] - points[i][0], points[j][1] - points[i][1]);
    const double len = chord.norm();
    if (std::abs(det) < 1e-14 || len < 1e-15) continue;
    const double hu = u.dot(points[i]);
    const double hw = w.dot(points[j]);
    const Eigen::Vector2d apex((hu * w[1] - hw * u[1]) / det, (u[0] * hw - w[0] * hu) / det);
    const double height =
        std::abs(chord[0] * (apex[1] - points[i][1]) - chord[1] * (apex[0] - points[i][0])) / len;
    worst = std::max(worst, height);
  }
  return worst;
}

JNRPolytope jnr2d(const HermitianOperator& f1, const HermitianOperator& f2, int n_directions) {
  if (f1.dim() != f2.dim()) throw DimensionMismatch("jnr2d operators must have equal dimensions");
  if (n_directions < 3) throw std::invalid_argument("jnr2d needs at least 3 directions");
  JNRPolytope out;
  out.dimension = 2;
  for (int k = 0; k < n_directions; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n_directions;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const Spectrum sp = eig(c * f1 + s * f2);
    const double tol = spectral_tolerance(sp);
    int top = 1;
    while (top < sp.size() && sp.max() - sp.eigenvalues(sp.size() - 1 - top) <= tol) ++top;
    if (top == 1) {
      const CVector v = sp.eigenvectors.col(sp.size() - 1);
      out.points.push_back(vec2(expectation(f1, v), expectation(f2, v)));
      out.directions.push_back(vec2(c, s));
      continue;
    }
    // Flat face: extremize the tangential functional inside the top eigenspace.
    const CMatrix basis = sp.eigenvectors.rightCols(top);
    const CMatrix tangential = basis.adjoint() * ((-s) * f1 + c * f2).matrix() * basis;
    const Spectrum face = eig(HermitianOperator::hermitian_part(tangential));
    for (int end : {0, top - 1}) {
      const CVector v = basis * face.eigenvectors.col(end);
      out.points.push_back(vec2(expectation(f1, v), expectation(f2, v)));
      out.directions.push_back(vec2(c, s));
    }
  }
  return out;
}

JNRPolytope jnr_xx2(const HermitianOperator& x) {
  const Eigen::VectorXd ev = eigenvalues(x);
  std::vector<geo::Point> pts;
  for (Eigen::Index i = 0; i < ev.size(); ++i) pts.push_back({ev(i), ev(i) * ev(i)});
  // Points on a parabola are in convex position; the hull only drops duplicates.
  // Near-duplicate eigenvalues are merged first so the hull stays clean.
  std::vector<geo::Point> merged;
  for (const auto& p : pts)
    if (merged.empty() || std::abs(p[0] - merged.back()[0]) > 1e-12 * std::max(1.0, std::abs(p[0])))
      merged.push_back(p);
  JNRPolytope out;
  out.dimension = 2;
  for (const auto& p : geo::convex_hull(merged)) out.points.push_back(vec2(p[0], p[1]));
  return out;
}

std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
  std::vector<Eigen::Vector3d> dirs;
  dirs.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    dirs.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return dirs;
}

JNRPolytope jnr3d_variance_surface(const HermitianOperator& x, const HermitianOperator& y, int n_directions) {
  if (x.dim() != y.dim()) throw DimensionMismatch("jnr3d operators must have equal dimensions");
  if (n_directions < 32) throw std::invalid_argument("jnr3d needs at least 32 directions");
  const HermitianOperator z = x.square() + y.square();
  JNRPolytope out;
  out.dimension = 3;
  const auto dirs = fibonacci_sphere(n_directions);
  for (const Eigen::Vector3d& d : dirs) {
    const Spectrum sp = eig(d(0) * x + d(1) * y + d(2) * z);
    const CVector v = sp.eigenvectors.col(sp.size() - 1);
    Eigen::VectorXd p(3);
    p << expectation(x, v), expectation(y, v), expectation(z, v);
    out.shades.push_back(p(2) - p(0) * p(0) - p(1) * p(1));
    out.points.push_back(std::move(p));
    out.directions.push_back(Eigen::VectorXd(d));
    if (x.dim() == 1) break;
  }
  return out;
}

DualCurve dual2d(const HermitianOperator& x, const HermitianOperator& y, int n_directions) {
  if (x.dim() != y.dim()) throw DimensionMismatch("dual2d operators must have equal dimensions");
  if (n_directions < 3) throw std::invalid_argument("dual2d needs at least 3 directions");
  DualCurve out;
  out.shift_x = x.trace() / x.dim();
  out.shift_y = y.trace() / y.dim();
  const HermitianOperator x0 = x.shifted(-out.shift_x);
  const HermitianOperator y0 = y.shifted(-out.shift_y);
  for (int k = 0; k < n_directions; ++k) {
    const double t = 2.0 * std::numbers::pi * k / n_directions;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const Eigen::VectorXd ev = eigenvalues(c * x0 + s * y0);
    const double top = ev(ev.size() - 1);
    if (top <= 1e-12)
      throw DualUnbounded("dual set is unbounded: the origin is not interior to W(X, Y) after the traceless shift");
    out.points.emplace_back(c / top, s / top);
  }
  return out;
}

}  // namespace varbound
