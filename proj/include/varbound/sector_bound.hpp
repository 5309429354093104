#pragma once

// Certified lower bounds with explicit error through sector decomposition:
// on each band x_i <= <X> <= x_{i+1} the variance is bounded from below by the
// expectation of X_i = X^2 - (x_i + x_{i+1}) X + x_i x_{i+1} 1, exact on the
// band edges and off by at most (gap / 2)^2 inside.

#include <stdexcept>
#include <vector>

#include "varbound/bound_numeric.hpp"
#include "varbound/geometry2d.hpp"
#include "varbound/linalg.hpp"

namespace varbound {

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GridCapExceeded : public std::runtime_error {
 public:
  GridCapExceeded(const std::string& what, double achieved) : std::runtime_error(what), achieved_(achieved) {}
  double achieved_error() const { return achieved_; }

 private:
  double achieved_;
};

inline constexpr double kGridSpectrumTolerance = 1e-9;

/// Strictly increasing breakpoints.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  /// Sorted spectrum with eigenvalues closer than 1e-9 merged.
  static Grid minimal(const HermitianOperator& x);

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double max_gap() const;
  /// (max_gap / 2)^2.
  double delta() const;
  /// Copy with the gap [points[i], points[i+1]] bisected.
  Grid bisected(std::size_t i) const;

 private:
  std::vector<double> points_;
};

struct SectorDecomposition {
  HermitianOperator source;
  Grid grid;
  /// One operator per band; a single-point grid yields the degenerate band
  /// (X - x_1)^2, which is exact.
  std::vector<HermitianOperator> sectors;
  double delta = 0.0;
  /// Exact lowest eigenvalue of each sector operator (from the spectrum of X).
  std::vector<double> sector_minima;
};

/// Throws GridError naming the first eigenvalue of X missing from the grid.
SectorDecomposition sector_decompose(const HermitianOperator& x, const Grid& grid);

/// value = min over band pairs of lambda_min(X_i + Y_j), error = delta_X + delta_Y.
BoundResult certified_bound(const HermitianOperator& x, const HermitianOperator& y, const Grid& grid_x,
                            const Grid& grid_y);
BoundResult certified_bound(const SectorDecomposition& dx, const SectorDecomposition& dy);

struct AutoRefineConfig {
  std::size_t grid_cap = 4096;
};

/// Starts from the minimal grids and bisects the largest gap of the grid with
/// the larger delta until delta_X + delta_Y <= tol. Ties alternate, X first.
BoundResult certified_bound_auto(const HermitianOperator& x, const HermitianOperator& y, double tol,
                                 const AutoRefineConfig& config = {});

struct UncertaintyRegionApprox {
  /// One convex polygon per band pair, index i * (ny) + j.
  std::vector<geo::Polygon> cells;
  double delta_x = 0.0;
  double delta_y = 0.0;
  /// Sampling gap per cell (inscribed polygon vs. true range), see
  /// JNRPolytope::sampling_gap.
  std::vector<double> cell_slack;

  /// True when p lies in (union of cells) + [0, delta_x] x [0, delta_y],
  /// allowing `slack` plus the per-cell sampling slack.
  bool contains(const geo::Point& p, double slack) const;
};

UncertaintyRegionApprox uncertainty_range_approx(const HermitianOperator& x, const HermitianOperator& y,
                                                 const Grid& grid_x, const Grid& grid_y, int directions);

}  // namespace varbound
