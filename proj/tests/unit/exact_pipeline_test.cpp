#include <doctest.h>

#include <cmath>
#include <random>

#include "varbound/bound_numeric.hpp"
#include "varbound/exact/bound_exact.hpp"
#include "varbound/exact/char_poly.hpp"
#include "varbound/exact/resultant.hpp"

using namespace varbound;
using namespace varbound::exact;

namespace {

UPoly upoly(std::vector<long> c) {
  std::vector<Rational> q;
  for (long v : c) q.emplace_back(v);
  return UPoly(q);
}

GaussianRationalMatrix rotated_x() {
  GaussianRationalMatrix x(3);
  x.set(0, 0, {-1});
  x.set(2, 2, {1});
  return x;
}

GaussianRationalMatrix rotated_y() {
  GaussianRationalMatrix y(3);
  y.set(0, 1, {1});
  y.set(1, 2, {0, 1});
  return y;
}

std::vector<double> real_roots(const UPoly& p) {
  std::vector<double> out;
  for (const auto& r : isolate_real_roots(p, Rational(1, Integer("1000000000000")))) out.push_back(r.value);
  return out;
}

}  // namespace

TEST_CASE("scalar determinant") {
  const auto sys = char_poly_system(GaussianRationalMatrix(1), GaussianRationalMatrix(1), false);
  REQUIRE(sys.size() == 3);
  const auto& v = sys[0].vars();
  const Polynomial x = Polynomial::variable(v, 0), y = Polynomial::variable(v, 1), l = Polynomial::variable(v, 2);
  CHECK(sys[0] == x * x + y * y - l);
  CHECK(sys[1] == Rational(2) * x);
  CHECK(sys[2] == Rational(2) * y);
}

TEST_CASE("qubit determinant degrees") {
  const auto [X, Y] = qubit_pair(Rational(1, 3), {Rational(1, 2), Rational(1, 5)});
  const auto sys = char_poly_system(X, Y, false);
  CHECK(sys[0].degree(2) == 2);
  CHECK(sys[0].degree(0) == 4);
  CHECK(sys[0].degree(1) == 4);
  CHECK(sys[0].total_degree() == 4);
}

TEST_CASE("symbolic determinant matches floating determinants") {
  GaussianRationalMatrix X(2), Y(2);
  X.set(0, 0, {1});
  X.set(1, 1, {-1});
  Y.set(0, 1, {1});
  const Polynomial d = char_poly_system(X, Y, false)[0];
  const CMatrix x = X.to_operator().matrix(), y = Y.to_operator().matrix();
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> num(-30, 30);
  for (int k = 0; k < 20; ++k) {
    const Rational px(num(rng), 7), py(num(rng), 5), pl(num(rng), 3);
    const Rational pt[3] = {px, py, pl};
    const double exact = d.evaluate(std::span<const Rational>(pt)).get_d();
    const double a = px.get_d(), b = py.get_d(), l = pl.get_d();
    const CMatrix m = x * x + y * y - 2 * (a * x + b * y) + (a * a + b * b - l) * CMatrix::Identity(2, 2);
    const double numeric = m.determinant().real();
    CHECK(std::abs(exact - numeric) <= 1e-9 * std::max(1.0, std::abs(numeric)));
  }
}

TEST_CASE("complex Hermitian input gives real coefficients") {
  CHECK_NOTHROW(char_poly_system(rotated_x(), rotated_y(), false));
  std::vector<GaussianRational> bad(4);
  bad[1] = {1, 1};
  bad[2] = {1, 1};
  CHECK_THROWS_AS(GaussianRationalMatrix(2, bad), std::invalid_argument);
}

TEST_CASE("interpolated system equals the symbolic one on rational input") {
  const auto [qx, qy] = qubit_pair(Rational(-3, 4), {Rational(1, 2), Rational(-5, 8)});
  for (bool reduce : {false, true}) {
    CHECK(char_poly_interpolated(rotated_x().to_operator(), rotated_y().to_operator(), 256, reduce) ==
          char_poly_system(rotated_x(), rotated_y(), reduce));
    CHECK(char_poly_interpolated(qx.to_operator(), qy.to_operator(), 256, reduce) == char_poly_system(qx, qy, reduce));
  }
}

TEST_CASE("interpolated spin systems eliminate to the known polynomials") {
  ExactConfig cfg;
  cfg.symmetry_reduce = true;
  const auto half = angular_momentum(1);
  const auto r1 = bound_exact_system(char_poly_interpolated(half.jx, half.jy, 256, true), half.jx, half.jy, cfg);
  CHECK(r1.factor == upoly({-1, 4}));
  const auto one = angular_momentum(2);
  const auto r2 = bound_exact_system(char_poly_interpolated(one.jx, one.jy, 256, true), one.jx, one.jy, cfg);
  CHECK(r2.factor == upoly({-7, 16}));
}

TEST_CASE("groebner eliminant of the qubit with a = 0, b = 1") {
  const auto [X, Y] = qubit_pair(Rational(0), {Rational(1)});
  const auto basis = buchberger(char_poly_system(X, Y, false));
  const auto elim = eliminants(basis);
  REQUIRE(!elim.empty());
  bool found = false;
  for (double r : real_roots(UPoly::from_polynomial(elim.front(), 2)))
    found = found || std::abs(r - qubit_bound(0.0, 1.0)) < 1e-12;
  CHECK(found);
}

TEST_CASE("qubit bound is the smallest root of t^2 + s t + |b|^2 at t = -λ") {
  // t² + (a² + |b|² + 1)t + |b|² has only negative roots; the bound is the
  // smallest root of its reflection t -> -λ.
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> num(-12, 12);
  for (int k = 0; k < 10; ++k) {
    const Rational a(num(rng), 4), br(num(rng), 4), bi(num(rng) + 13, 4);
    const Rational b2 = br * br + bi * bi;
    const Rational s = a * a + b2 + 1;
    const UPoly in_t({b2, s, Rational(1)});
    const UPoly in_lambda({b2, -s, Rational(1)});
    const auto [X, Y] = qubit_pair(a, {br, bi});
    const ExactResult res = bound_exact(X, Y);
    CHECK(in_lambda.divisible_by(res.factor));
    CHECK_FALSE(in_t.divisible_by(res.factor));
    const auto roots = real_roots(in_lambda);
    REQUIRE(!roots.empty());
    CHECK(std::abs(roots.front() - res.bound.value) < 1e-12);
  }
}

TEST_CASE("resultant and groebner eliminants share their real roots") {
  for (int two_j : {1, 2, 3}) {
    CAPTURE(two_j);
    const auto sys = char_poly_interpolated_angular(two_j, 256, true);
    const UPoly res = eliminate_resultant(sys[0], sys[1]);
    const auto basis = buchberger(sys);
    const UPoly gb = UPoly::from_polynomial(eliminants(basis).front(), 1);
    const auto a = real_roots(gb);
    const auto b = real_roots(res);
    for (double r : a) {
      bool found = false;
      for (double q : b) found = found || std::abs(r - q) < 1e-10;
      CHECK(found);
    }
    for (double q : b) {
      bool found = false;
      for (double r : a) found = found || std::abs(r - q) < 1e-10;
      CHECK(found);
    }
  }
}

TEST_CASE("exact spin bounds") {
  const auto one = bound_exact_angular(2);
  REQUIRE(one.exact_value);
  CHECK(*one.exact_value == Rational(7, 16));
  CHECK(one.factor.to_string() == "16λ - 7");
  CHECK(one.bound.error == 0.0);
  CHECK(one.bound.metadata.at("order_check") == "match");

  const auto two = bound_exact_angular(4);
  CHECK(two.factor == upoly({-6487, 13404, -7104, 1024}));
  CHECK(two.bound.value == doctest::Approx(0.7496).epsilon(1e-4));
  CHECK(!two.exact_value);
  CHECK(two.bound.error < 1e-25);
}

TEST_CASE("exact bound of the rotated pair is 15/32") {
  const auto r = bound_exact(rotated_x(), rotated_y());
  REQUIRE(r.exact_value);
  CHECK(*r.exact_value == Rational(15, 32));
  CHECK(r.bound.metadata.at("elimination") == "groebner");
  CHECK(std::abs(r.bound.min_x) < 1e-9);
  CHECK(r.bound.min_y == doctest::Approx(-1.40312).epsilon(1e-5));
}

TEST_CASE("exact and numeric bounds agree on random rational pairs") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> num(-4, 4);
  for (int k = 0; k < 6; ++k) {
    GaussianRationalMatrix X(2), Y(2);
    X.set(0, 0, {Rational(num(rng), 2)});
    X.set(1, 1, {Rational(num(rng), 2)});
    X.set(0, 1, {Rational(num(rng), 2), Rational(num(rng), 2)});
    Y.set(0, 0, {Rational(num(rng), 2)});
    Y.set(1, 1, {Rational(num(rng), 2)});
    Y.set(0, 1, {Rational(num(rng), 2), Rational(num(rng), 2)});
    const double numeric = bound_numeric(WeightedPair(X.to_operator(), Y.to_operator())).value;
    CAPTURE(k);
    double exact = 0;
    try {
      exact = bound_exact(X, Y).bound.value;
    } catch (const PositiveDimensional&) {
      // Only draws with a zero bound have a continuum of stationary points.
      CHECK(std::abs(numeric) < 1e-9);
      continue;
    }
    CHECK(std::abs(exact - numeric) <= 1e-7);
  }
}

TEST_CASE("certification failure lists the candidates") {
  ExactConfig cfg;
  cfg.cross_check_tol = -1.0;
  try {
    bound_exact_angular(3, cfg);
    FAIL("certified with a negative cross-check tolerance");
  } catch (const CertificationFailure& e) {
    CHECK(!e.candidates().empty());
    CHECK(e.numeric_value() == doctest::Approx(0.6009).epsilon(1e-4));
  }
}

TEST_CASE("positive dimensional and over-budget systems are reported") {
  GaussianRationalMatrix x(3);
  x.set(0, 0, {1});
  x.set(2, 2, {1});
  CHECK_THROWS_AS(bound_exact(x, rotated_y()), PositiveDimensional);

  ExactConfig cfg;
  cfg.budget.max_terms = 5;
  CHECK_THROWS_AS(bound_exact_angular(4, cfg), BudgetExceeded);
  CHECK_THROWS_AS(bound_exact(rotated_x(), rotated_y(), cfg), BudgetExceeded);
}

TEST_CASE("qubit closed form") {
  CHECK(qubit_bound(0.0, 0.0) == 0.0);
  CHECK(qubit_bound(0.0, 1.0) == doctest::Approx(1.0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const double a = u(rng);
    const std::complex<double> b(u(rng), u(rng));
    CMatrix x = CMatrix::Zero(2, 2), y = CMatrix::Zero(2, 2);
    x(0, 0) = 1;
    x(1, 1) = -1;
    y(0, 0) = a;
    y(1, 1) = -a;
    y(0, 1) = b;
    y(1, 0) = std::conj(b);
    const double numeric = bound_numeric(WeightedPair(HermitianOperator(x), HermitianOperator(y))).value;
    CHECK(std::abs(qubit_bound(a, b) - numeric) <= 1e-9);
  }
}

TEST_CASE("minimal polynomial degree formula") {
  CHECK(minimal_poly_degree_check(1) == 1);
  CHECK(minimal_poly_degree_check(3) == 3);
  CHECK(minimal_poly_degree_check(5) == 7);
  CHECK(minimal_poly_degree_check(20) == 55);
  CHECK_THROWS_AS(minimal_poly_degree_check(0), std::invalid_argument);
}
