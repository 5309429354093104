#include <doctest.h>

#include <cmath>

#include "varbound/bound_numeric.hpp"
#include "varbound/sector_bound.hpp"

using namespace varbound;

namespace {

HermitianOperator diag3(double a, double b, double c) { return HermitianOperator::diagonal(Eigen::Vector3d(a, b, c)); }

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("sector operators on the minimal grid of diag(-1, 0, 1)") {
  const auto x = diag3(-1, 0, 1);
  const SectorDecomposition d = sector_decompose(x, Grid({-1, 0, 1}));
  REQUIRE(d.sectors.size() == 2);
  CHECK(max_abs(d.sectors[0].matrix() - diag3(0, 0, 2).matrix()) < 1e-15);
  CHECK(max_abs(d.sectors[1].matrix() - diag3(2, 0, 0).matrix()) < 1e-15);
  CHECK(d.delta == 0.25);
}

TEST_CASE("two-level sector") {
  const auto x = HermitianOperator::diagonal(Eigen::Vector2d(0, 1));
  const SectorDecomposition d = sector_decompose(x, Grid({0, 1}));
  REQUIRE(d.sectors.size() == 1);
  CHECK(max_abs(d.sectors[0].matrix() - (x.square() - x).matrix()) < 1e-15);
  CHECK(d.delta == 0.25);
}

TEST_CASE("refined grid quarters the error") {
  const SectorDecomposition d = sector_decompose(diag3(-1, 0, 1), Grid({-1, -0.5, 0, 0.5, 1}));
  CHECK(d.sectors.size() == 4);
  CHECK(d.delta == 1.0 / 16);
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(Grid({}), GridError);
  CHECK_THROWS_AS(Grid({0, 0}), GridError);
  CHECK_THROWS_AS(Grid({1, 0}), GridError);
  CHECK_THROWS_AS(sector_decompose(diag3(-1, 0, 1), Grid({-1, 1})), GridError);
  CHECK_THROWS_AS(Grid({0, 1}).bisected(1), GridError);
  const Grid g = Grid::minimal(diag3(2, 2 + 1e-12, 5));
  CHECK(g.size() == 2);
}

TEST_CASE("single-point grid gives an exact degenerate band") {
  const auto x = HermitianOperator::identity(3).shifted(1.0);
  const SectorDecomposition d = sector_decompose(x, Grid::minimal(x));
  REQUIRE(d.sectors.size() == 1);
  CHECK(d.delta == 0.0);
  CHECK(max_abs(d.sectors[0].matrix()) < 1e-15);
}

TEST_CASE("certified bound on spin 1 with minimal grids brackets 7/16") {
  const auto j = angular_momentum(2);
  const Grid g({-1, 0, 1});
  const BoundResult r = certified_bound(j.jx, j.jy, g, g);
  // Independent evaluation: min over the four band pairs of λ_min(X_i + Y_k).
  double oracle = INFINITY;
  const std::array<std::pair<double, double>, 2> bands = {{{-1, 0}, {0, 1}}};
  for (auto [a, b] : bands)
    for (auto [c, d] : bands) {
      const CMatrix m = j.jx.square().matrix() - (a + b) * j.jx.matrix() + a * b * CMatrix::Identity(3, 3) +
                        j.jy.square().matrix() - (c + d) * j.jy.matrix() + c * d * CMatrix::Identity(3, 3);
      oracle = std::min(oracle, eigenvalues(HermitianOperator::hermitian_part(m))(0));
    }
  CHECK(r.value == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(r.value <= 0.4375);
  CHECK(0.4375 <= r.value + r.error + 1e-12);
  CHECK(r.error == 0.5);
}

TEST_CASE("commuting observables certify zero") {
  const auto x = diag3(-1, 0, 1);
  CHECK(std::abs(certified_bound(x, x, Grid::minimal(x), Grid::minimal(x)).value) < 1e-15);
}

TEST_CASE("spin 2 with gap 1/8 grids") {
  const auto j = angular_momentum(4);
  std::vector<double> pts;
  for (int k = 0; k <= 32; ++k) pts.push_back(-2 + k / 8.0);
  const Grid g(pts);
  const BoundResult r = certified_bound(j.jx, j.jy, g, g);
  CHECK(r.error == doctest::Approx(2 * (1.0 / 16) * (1.0 / 16)));
  const double numeric = bound_numeric(WeightedPair(j.jx, j.jy)).value;
  CHECK(r.value <= numeric + 1e-12);
  CHECK(numeric <= r.value + r.error + 1e-12);
  CHECK(std::abs(r.value - 0.7496) <= r.error + 1e-4);
}

TEST_CASE("automatic refinement reaches the tolerance") {
  const auto j = angular_momentum(2);
  const BoundResult r = certified_bound_auto(j.jx, j.jy, 1e-3);
  CHECK(r.error <= 1e-3);
  CHECK(r.value <= 0.4375 + 1e-12);
  CHECK(r.value >= 0.4375 - 1e-3);

  CMatrix x = CMatrix::Zero(3, 3), y = CMatrix::Zero(3, 3);
  x(0, 0) = -1;
  x(2, 2) = 1;
  y(0, 1) = y(1, 0) = 1;
  y(1, 2) = Complex(0, 1);
  y(2, 1) = Complex(0, -1);
  const BoundResult n = certified_bound_auto(HermitianOperator(x), HermitianOperator(y), 1e-4);
  CHECK(n.value <= 15.0 / 32 + 1e-12);
  CHECK(n.value >= 15.0 / 32 - 1e-4);
}

TEST_CASE("loose tolerance keeps the minimal grids") {
  const auto j = angular_momentum(2);
  const BoundResult a = certified_bound_auto(j.jx, j.jy, 10.0);
  const BoundResult b = certified_bound(j.jx, j.jy, Grid::minimal(j.jx), Grid::minimal(j.jy));
  CHECK(a.value == b.value);
  CHECK(a.error == b.error);
}

TEST_CASE("grid cap is reported") {
  const auto j = angular_momentum(4);
  AutoRefineConfig cfg;
  cfg.grid_cap = 8;
  CHECK_THROWS_AS(certified_bound_auto(j.jx, j.jy, 1e-6, cfg), GridCapExceeded);
}

TEST_CASE("sandwich and refinement monotonicity on random pairs") {
  for (int t = 0; t < 20; ++t) {
    const int dim = 2 + t % 5;
    const HermitianOperator x = random_hermitian(dim, 700 + 2 * t);
    const HermitianOperator y = random_hermitian(dim, 701 + 2 * t);
    const double numeric = bound_numeric(WeightedPair(x, y)).value;
    Grid gx = Grid::minimal(x), gy = Grid::minimal(y);
    double previous = -INFINITY;
    for (int step = 0; step < 6; ++step) {
      const BoundResult r = certified_bound(x, y, gx, gy);
      CHECK(r.value <= numeric + 1e-7);
      CHECK(numeric <= r.value + r.error + 1e-7);
      CHECK(r.value >= previous - 1e-12);
      CHECK(r.error == gx.delta() + gy.delta());
      previous = r.value;
      if (gx.size() > 1) gx = gx.bisected(step % (gx.size() - 1));
      if (gy.size() > 1) gy = gy.bisected((2 * step) % (gy.size() - 1));
    }
  }
}

TEST_CASE("delta is the squared half of the largest gap") {
  const Grid g({-1, 0.25, 0.5, 2});
  CHECK(g.max_gap() == 1.5);
  CHECK(g.delta() == 0.75 * 0.75);
}

TEST_CASE("sector minimum bounds the variance within delta") {
  for (int t = 0; t < 5; ++t) {
    const int dim = 3 + t;
    const HermitianOperator x = random_hermitian(dim, 900 + t);
    const SectorDecomposition d = sector_decompose(x, Grid::minimal(x));
    for (int s = 0; s < 200; ++s) {
      const DensityState rho = random_state(dim, 5000 * t + s);
      double lo = INFINITY;
      for (const auto& xi : d.sectors) lo = std::min(lo, expectation(xi, rho));
      const double v = variance(x, rho);
      CHECK(lo <= v + 1e-9);
      CHECK(v <= lo + d.delta + 1e-9);
    }
  }
}

TEST_CASE("uncertainty range approximation") {
  const auto x = diag3(-1, 0, 1);
  const auto y = diag3(2, 1, 0);
  const auto u = uncertainty_range_approx(x, y, Grid::minimal(x), Grid::minimal(y), 64);
  CHECK(u.contains({0, 0}, 1e-9));

  const auto j = angular_momentum(2);
  const auto spin = uncertainty_range_approx(j.jx, j.jy, Grid::minimal(j.jx), Grid::minimal(j.jy), 256);
  CHECK(spin.cells.size() == 4);
  for (int s = 0; s < 500; ++s) {
    const DensityState rho =
        s % 2 ? random_state(3, 7000 + s) : DensityState::pure(random_pure_vector(3, 7000 + s));
    CHECK(spin.contains({variance(j.jx, rho), variance(j.jy, rho)}, 1e-9));
  }
  CHECK_FALSE(spin.contains({-0.1, 0.5}, 1e-9));
}
