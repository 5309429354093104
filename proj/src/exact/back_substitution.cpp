#include "varbound/exact/back_substitution.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace varbound::exact {

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

struct Collapsed {
  std::vector<long double> coeffs;  // in the level variable, constant first
  std::vector<long double> scale;   // sum of |contributions| per coefficient
};

// Substitutes the known values (indices > var) and collects by powers of var.
Collapsed collapse(const Polynomial& p, int var, const std::vector<long double>& known) {
  Collapsed c;
  const int d = p.degree(var);
  c.coeffs.assign(d + 1, 0.0L);
  c.scale.assign(d + 1, 0.0L);
  for (const auto& t : p.terms()) {
    long double m = static_cast<long double>(t.coeff.get_d());
    for (int k = var + 1; k < p.nvars(); ++k) {
      const int e = t.mono.exponent(k);
      if (e > 0) m *= std::pow(known[k], static_cast<long double>(e));
    }
    const int e = t.mono.exponent(var);
    c.coeffs[e] += m;
    c.scale[e] += std::fabs(m);
  }
  return c;
}

// Drops leading coefficients lost to cancellation.
int effective_degree(const Collapsed& c, long double rel) {
  long double total = 0;
  for (long double s : c.scale) total += s;
  int d = static_cast<int>(c.coeffs.size()) - 1;
  while (d >= 0 && std::fabs(c.coeffs[d]) <= rel * std::max(c.scale[d], total * 1e-30L)) --d;
  return d;
}

long double horner(const std::vector<long double>& c, long double x, long double* magnitude = nullptr) {
  long double v = 0, m = 0;
  for (std::size_t k = c.size(); k-- > 0;) {
    v = v * x + c[k];
    m = m * std::fabs(x) + std::fabs(c[k]);
  }
  if (magnitude) *magnitude = m;
  return v;
}

bool search(const std::vector<Polynomial>& system, int var, std::vector<long double>& values,
            const BackSubstitutionTolerance& tol) {
  if (var < 0) return true;
  std::vector<Collapsed> level;
  for (const auto& p : system)
    if (!p.is_zero() && p.highest_variable() == var) level.push_back(collapse(p, var, values));

  int pivot = -1;
  int pivot_degree = 0;
  for (std::size_t k = 0; k < level.size(); ++k) {
    const int d = effective_degree(level[k], 1e-14L);
    if (d == 0) return false;  // nonzero constant: inconsistent
    if (d > 0 && (pivot < 0 || d < pivot_degree)) {
      pivot = static_cast<int>(k);
      pivot_degree = d;
    }
  }
  if (pivot < 0) {
    // Unconstrained at this level.
    values[var] = 0;
    return search(system, var - 1, values, tol);
  }
  std::vector<long double> pc(level[pivot].coeffs.begin(), level[pivot].coeffs.begin() + pivot_degree + 1);
  for (long double r : near_real_roots(pc, tol.imaginary)) {
    bool ok = true;
    for (std::size_t k = 0; k < level.size() && ok; ++k) {
      if (static_cast<int>(k) == pivot) continue;
      const long double v = horner(level[k].coeffs, r);
      long double scale = 0;
      for (std::size_t e = 0; e < level[k].scale.size(); ++e)
        scale += level[k].scale[e] * std::pow(std::fabs(r), static_cast<long double>(e));
      ok = std::fabs(v) <= tol.residual * std::max(scale, 1e-30L);
    }
    if (!ok) continue;
    values[var] = r;
    if (search(system, var - 1, values, tol)) return true;
  }
  return false;
}

}  // namespace

std::vector<long double> near_real_roots(const std::vector<long double>& coeffs, double imaginary_tol) {
  std::vector<long double> c = coeffs;
  while (!c.empty() && c.back() == 0) c.pop_back();
  const int d = static_cast<int>(c.size()) - 1;
  if (d < 1) return {};
  std::vector<long double> out;
  if (d == 1) {
    out.push_back(-c[0] / c[1]);
    return out;
  }
  LMatrix comp = LMatrix::Zero(d, d);
  for (int k = 1; k < d; ++k) comp(k, k - 1) = 1;
  for (int k = 0; k < d; ++k) comp(k, d - 1) = -c[k] / c[d];
  Eigen::EigenSolver<LMatrix> solver(comp, false);
  const auto ev = solver.eigenvalues();
  std::vector<long double> dc(d);
  for (int k = 1; k <= d; ++k) dc[k - 1] = c[k] * k;
  for (int k = 0; k < d; ++k) {
    const long double re = ev[k].real();
    if (std::fabs(ev[k].imag()) > imaginary_tol * (1 + std::fabs(re))) continue;
    long double r = re;
    for (int it = 0; it < 8; ++it) {
      const long double f = horner(c, r);
      const long double fp = horner(dc, r);
      if (fp == 0) break;
      const long double step = f / fp;
      if (!std::isfinite(step) || std::fabs(step) > 1e-3L * (1 + std::fabs(r))) break;
      r -= step;
    }
    out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<RealPoint> real_solution_at(const std::vector<Polynomial>& system, long double last,
                                          const BackSubstitutionTolerance& tol) {
  if (system.empty()) return std::nullopt;
  const int n = system.front().nvars();
  std::vector<long double> values(n, 0.0L);
  values[n - 1] = last;
  // Polynomials in the last variable alone must vanish at it.
  for (const auto& p : system) {
    if (p.is_zero() || p.highest_variable() != n - 1) continue;
    const Collapsed c = collapse(p, n - 1, values);
    long double mag = 0;
    const long double v = horner(c.coeffs, last, &mag);
    if (std::fabs(v) > tol.residual * std::max(mag, 1e-30L)) return std::nullopt;
  }
  if (!search(system, n - 2, values, tol)) return std::nullopt;
  return RealPoint{values};
}

}  // namespace varbound::exact
