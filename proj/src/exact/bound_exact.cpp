#include "varbound/exact/bound_exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "varbound/exact/back_substitution.hpp"
#include "varbound/exact/resultant.hpp"

namespace varbound::exact {

namespace {

long double to_long_double(const Rational& q) {
  const double hi = q.get_d();
  const Rational rest = q - from_double(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

struct Elimination_ {
  UPoly eliminant;
  std::vector<Polynomial> back_system;
  std::string method;
};

UPoly resultant_with_fallback(const Polynomial& d) {
  try {
    return eliminate_resultant(d, d.derivative(0));
  } catch (const ZeroResultant&) {
    const Polynomial reduced = squarefree_in_first(d);
    return eliminate_resultant(reduced, reduced.derivative(0));
  }
}

Elimination_ eliminate(const std::vector<Polynomial>& system, const ExactConfig& config) {
  const int nv = system.front().nvars();
  Elimination method = config.elimination;
  if (method == Elimination::Auto) method = nv == 2 ? Elimination::Resultant : Elimination::Groebner;

  if (method == Elimination::Resultant) {
    if (nv != 2) throw std::invalid_argument("resultant elimination needs a two-variable system");
    if (system[0].size() > config.budget.max_terms) {
      std::ostringstream os;
      os << "determinant has " << system[0].size() << " terms, cap " << config.budget.max_terms;
      throw BudgetExceeded(os.str(), 0, 0);
    }
    UPoly r = resultant_with_fallback(system[0]);
    if (r.degree() > config.budget.max_degree || static_cast<std::size_t>(r.degree() + 1) > config.budget.max_terms) {
      std::ostringstream os;
      os << "eliminant degree " << r.degree() << " exceeds cap (degree " << config.budget.max_degree << ", terms "
         << config.budget.max_terms << ")";
      throw BudgetExceeded(os.str(), 0, 0);
    }
    return {r.primitive(), {system[0], system[0].derivative(0)}, "resultant"};
  }

  const auto basis = buchberger(system, MonomialOrder::Lex, config.budget);
  const auto elim = eliminants(basis);
  if (elim.empty() || elim.front().is_constant()) {
    if (!elim.empty() && !elim.front().is_zero())
      throw PositiveDimensional("the stationarity system has no solutions");
    throw PositiveDimensional("the stationarity system is positive dimensional: no eliminant in λ alone");
  }
  return {UPoly::from_polynomial(elim.front(), nv - 1).primitive(), basis, "groebner"};
}

}  // namespace

ExactResult bound_exact_system(const std::vector<Polynomial>& system, const HermitianOperator& X,
                               const HermitianOperator& Y, const ExactConfig& config) {
  if (system.empty()) throw std::invalid_argument("empty system");
  const Elimination_ e = eliminate(system, config);

  const WeightedPair pair(X, Y);
  const BoundResult numeric = bound_numeric(pair, config.numeric);

  std::vector<Candidate> all;
  for (const auto& [f, mult] : factor(e.eliminant)) {
    (void)mult;
    for (const auto& root : isolate_real_roots(f, config.isolation_width)) all.push_back({root, f, false, false});
  }
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) { return a.root.lo < b.root.lo; });

  ExactResult result;
  result.eliminant = e.eliminant;
  result.numeric_value = numeric.value;
  const int nv = system.front().nvars();
  for (auto& c : all) {
    const long double lam = to_long_double((c.root.lo + c.root.hi) / 2);
    const auto point = real_solution_at(e.back_system, lam);
    c.real_solution = point.has_value();
    c.agrees = std::fabs(static_cast<double>(lam) - numeric.value) <= config.cross_check_tol;
    result.candidates.push_back(c);
    if (c.real_solution && c.agrees) {
      result.factor = c.factor;
      if (c.factor.degree() == 1) result.exact_value = -c.factor.coeff(0) / c.factor.coeff(1);
      BoundResult& b = result.bound;
      b.value = result.exact_value ? result.exact_value->get_d() : static_cast<double>(lam);
      b.method = Method::Exact;
      b.error = result.exact_value ? 0.0 : c.root.width().get_d();
      b.min_x = static_cast<double>(point->values[0]);
      b.min_y = nv == 3 ? static_cast<double>(point->values[1]) : 0.0;
      b.witness = shifted_minimum(pair, b.min_x, b.min_y).vector;
      b.metadata["elimination"] = e.method;
      b.metadata["eliminant_degree"] = std::to_string(e.eliminant.degree());
      b.metadata["factor"] = c.factor.to_string();
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", numeric.value);
      b.metadata["numeric_value"] = buf;
      if (result.exact_value) b.metadata["exact_value"] = to_string(*result.exact_value);
      return result;
    }
    if (static_cast<double>(lam) > numeric.value + config.cross_check_tol) break;
  }
  std::ostringstream os;
  os << "no candidate root certified (" << result.candidates.size() << " examined, numeric bound "
     << numeric.value << ")";
  throw CertificationFailure(os.str(), result.candidates, numeric.value);
}

ExactResult bound_exact(const GaussianRationalMatrix& X, const GaussianRationalMatrix& Y, const ExactConfig& config) {
  const auto system = char_poly_system(X, Y, config.symmetry_reduce);
  return bound_exact_system(system, X.to_operator(), Y.to_operator(), config);
}

ExactResult bound_exact(const HermitianOperator& X, const HermitianOperator& Y, const ExactConfig& config) {
  const auto system = char_poly_interpolated(X, Y, config.precision_bits, config.symmetry_reduce);
  return bound_exact_system(system, X, Y, config);
}

ExactResult bound_exact_angular(int two_j, ExactConfig config) {
  config.symmetry_reduce = true;
  const auto system = char_poly_interpolated_angular(two_j, config.precision_bits, true);
  const AngularMomentum j = angular_momentum(two_j);
  ExactResult r = bound_exact_system(system, j.jx, j.jy, config);
  const int expected = minimal_poly_degree_check(two_j);
  r.bound.metadata["expected_order"] = std::to_string(expected);
  r.bound.metadata["order_check"] = r.factor.degree() == expected ? "match" : "mismatch";
  return r;
}

std::pair<GaussianRationalMatrix, GaussianRationalMatrix> qubit_pair(const Rational& a, const GaussianRational& b) {
  GaussianRationalMatrix X(2), Y(2);
  X.set(0, 0, {1});
  X.set(1, 1, {-1});
  Y.set(0, 0, {a});
  Y.set(1, 1, {-a});
  Y.set(0, 1, b);
  return {X, Y};
}

double qubit_bound(double a, std::complex<double> b) {
  const double b2 = std::norm(b);
  const double s = a * a + b2 + 1;
  // ½(s - √(s² - 4|b|²)) rewritten as 2|b|² / (s + √(s² - 4|b|²)).
  return 2 * b2 / (s + std::sqrt(std::max(0.0, s * s - 4 * b2)));
}

int minimal_poly_degree_check(int n) {
  if (n < 1) throw std::invalid_argument("n = 2j must be positive");
  const int sign = n % 2 == 0 ? 1 : -1;
  return (6 + n * (3 * n + 2) - sign * (n * (n - 2) + 6)) / 16;
}

}  // namespace varbound::exact
