#include "varbound/sector_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "varbound/jnr_geom.hpp"

namespace varbound {

Grid::Grid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw GridError("grid must contain at least one point");
  for (std::size_t i = 1; i < points_.size(); ++i)
    if (!(points_[i] > points_[i - 1])) throw GridError("grid points must be strictly increasing");
}

Grid Grid::minimal(const HermitianOperator& x) {
  const Eigen::VectorXd ev = eigenvalues(x);
  std::vector<double> pts;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (pts.empty() || ev(i) - pts.back() > kGridSpectrumTolerance) pts.push_back(ev(i));
  return Grid(std::move(pts));
}

double Grid::max_gap() const {
  double g = 0.0;
  for (std::size_t i = 1; i < points_.size(); ++i) g = std::max(g, points_[i] - points_[i - 1]);
  return g;
}

double Grid::delta() const {
  const double h = max_gap() / 2.0;
  return h * h;
}

Grid Grid::bisected(std::size_t i) const {
  if (i + 1 >= points_.size()) throw GridError("gap index out of range");
  std::vector<double> pts = points_;
  pts.insert(pts.begin() + static_cast<std::ptrdiff_t>(i) + 1, 0.5 * (points_[i] + points_[i + 1]));
  return Grid(std::move(pts));
}

SectorDecomposition sector_decompose(const HermitianOperator& x, const Grid& grid) {
  const Eigen::VectorXd ev = eigenvalues(x);
  const auto& g = grid.points();
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    const auto it = std::lower_bound(g.begin(), g.end(), ev(k));
    double dist = std::numeric_limits<double>::infinity();
    if (it != g.end()) dist = std::min(dist, *it - ev(k));
    if (it != g.begin()) dist = std::min(dist, ev(k) - *(it - 1));
    if (dist > kGridSpectrumTolerance) {
      std::ostringstream os;
      os.precision(17);
      os << "grid does not contain eigenvalue " << ev(k) << " (index " << k << ", distance " << dist << ")";
      throw GridError(os.str());
    }
  }
  const HermitianOperator x2 = x.square();
  SectorDecomposition d{x, grid, {}, grid.delta(), {}};
  auto band = [&](double lo, double hi) {
    d.sectors.push_back((x2 - (lo + hi) * x).shifted(lo * hi));
    double m = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < ev.size(); ++k) m = std::min(m, (ev(k) - lo) * (ev(k) - hi));
    d.sector_minima.push_back(m);
  };
  if (g.size() == 1) {
    band(g[0], g[0]);
  } else {
    for (std::size_t i = 0; i + 1 < g.size(); ++i) band(g[i], g[i + 1]);
  }
  return d;
}

BoundResult certified_bound(const HermitianOperator& x, const HermitianOperator& y, const Grid& grid_x,
                            const Grid& grid_y) {
  if (x.dim() != y.dim()) throw DimensionMismatch("observables must have equal dimensions");
  return certified_bound(sector_decompose(x, grid_x), sector_decompose(y, grid_y));
}

BoundResult certified_bound(const SectorDecomposition& dx, const SectorDecomposition& dy) {
  if (dx.source.dim() != dy.source.dim()) throw DimensionMismatch("observables must have equal dimensions");
  const int dim = dx.source.dim();
  auto order = [](const std::vector<double>& m) {
    std::vector<std::size_t> idx(m.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return m[a] < m[b]; });
    return idx;
  };
  const auto ox = order(dx.sector_minima);
  const auto oy = order(dy.sector_minima);

  // lambda_min(X_i + Y_j) >= lambda_min(X_i) + lambda_min(Y_j) prunes most pairs;
  // a Cholesky probe on X_i + Y_j - best discards pairs that cannot improve.
  double best = std::numeric_limits<double>::infinity();
  CVector witness;
  std::size_t evaluated = 0;
  for (std::size_t i : ox) {
    if (dx.sector_minima[i] + dy.sector_minima[oy.front()] >= best) break;
    for (std::size_t j : oy) {
      if (dx.sector_minima[i] + dy.sector_minima[j] >= best) break;
      CMatrix m = dx.sectors[i].matrix() + dy.sectors[j].matrix();
      if (std::isfinite(best)) {
        CMatrix probe = m;
        probe.diagonal().array() -= best;
        Eigen::LLT<CMatrix> llt(probe);
        if (llt.info() == Eigen::Success) continue;
      }
      ++evaluated;
      const Spectrum s = eig(HermitianOperator::hermitian_part(m));
      if (s.min() < best) {
        best = s.min();
        witness = s.eigenvectors.col(0);
      }
    }
  }
  BoundResult r;
  r.method = Method::Certified;
  r.value = best;
  r.error = dx.delta + dy.delta;
  r.witness = witness.size() == dim ? witness : CVector(CVector::Unit(dim, 0));
  r.min_x = expectation(dx.source, r.witness);
  r.min_y = expectation(dy.source, r.witness);
  r.metadata["grid_x"] = std::to_string(dx.grid.size());
  r.metadata["grid_y"] = std::to_string(dy.grid.size());
  r.metadata["pairs_evaluated"] = std::to_string(evaluated);
  return r;
}

BoundResult certified_bound_auto(const HermitianOperator& x, const HermitianOperator& y, double tol,
                                 const AutoRefineConfig& config) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  std::vector<double> gx = Grid::minimal(x).points();
  std::vector<double> gy = Grid::minimal(y).points();
  auto largest_gap = [](const std::vector<double>& g) {
    std::size_t at = 0;
    double w = -1.0;
    for (std::size_t i = 0; i + 1 < g.size(); ++i)
      if (g[i + 1] - g[i] > w) {
        w = g[i + 1] - g[i];
        at = i;
      }
    return std::pair{at, std::max(w, 0.0)};
  };
  auto delta_of = [&](const std::vector<double>& g) {
    const double h = largest_gap(g).second / 2.0;
    return h * h;
  };
  double delta_x = delta_of(gx);
  double delta_y = delta_of(gy);
  std::size_t ties = 0;
  bool next_tie_x = true;
  while (delta_x + delta_y > tol) {
    bool refine_x = delta_x > delta_y;
    if (delta_x == delta_y) {
      refine_x = next_tie_x;
      next_tie_x = !next_tie_x;
      ++ties;
    }
    std::vector<double>& g = refine_x ? gx : gy;
    if (g.size() >= config.grid_cap) {
      std::ostringstream os;
      os << "grid cap " << config.grid_cap << " reached before tolerance " << tol << "; achieved error "
         << delta_x + delta_y;
      throw GridCapExceeded(os.str(), delta_x + delta_y);
    }
    const auto [at, width] = largest_gap(g);
    g.insert(g.begin() + static_cast<std::ptrdiff_t>(at) + 1, g[at] + width / 2.0);
    (refine_x ? delta_x : delta_y) = delta_of(g);
  }
  BoundResult r = certified_bound(x, y, Grid(gx), Grid(gy));
  r.metadata["tie_break"] = "alternate, X first";
  r.metadata["ties"] = std::to_string(ties);
  return r;
}

bool UncertaintyRegionApprox::contains(const geo::Point& p, double slack) const {
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const geo::Polygon grown = geo::minkowski_box(cells[c], delta_x, delta_y);
    if (geo::contains(grown, p, slack + cell_slack[c])) return true;
  }
  return false;
}

UncertaintyRegionApprox uncertainty_range_approx(const HermitianOperator& x, const HermitianOperator& y,
                                                 const Grid& grid_x, const Grid& grid_y, int directions) {
  if (directions < 8) throw std::invalid_argument("uncertainty range needs at least 8 directions");
  if (x.dim() != y.dim()) throw DimensionMismatch("observables must have equal dimensions");
  const SectorDecomposition dx = sector_decompose(x, grid_x);
  const SectorDecomposition dy = sector_decompose(y, grid_y);
  UncertaintyRegionApprox out;
  out.delta_x = dx.delta;
  out.delta_y = dy.delta;
  for (const auto& xi : dx.sectors)
    for (const auto& yj : dy.sectors) {
      const JNRPolytope cell = jnr2d(xi, yj, directions);
      out.cells.push_back(cell.polygon());
      out.cell_slack.push_back(cell.sampling_gap() + 1e-9);
    }
  return out;
}

}  // namespace varbound
