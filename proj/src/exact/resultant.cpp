#include "varbound/exact/resultant.hpp"

#include <algorithm>

namespace varbound::exact {

namespace {

// Coefficients in x (low to high), each a polynomial in λ.
using XPoly = std::vector<UPoly>;

void require_bivariate(const Polynomial& p) {
  if (p.nvars() != 2) throw std::invalid_argument("expected a polynomial in exactly two variables");
}

XPoly split(const Polynomial& p) {
  XPoly out(p.degree(0) + 1);
  std::vector<std::vector<Rational>> dense(out.size());
  for (const auto& t : p.terms()) {
    auto& row = dense[t.mono.exponent(0)];
    const int e = t.mono.exponent(1);
    if (static_cast<int>(row.size()) <= e) row.resize(e + 1, Rational(0));
    row[e] += t.coeff;
  }
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = UPoly(std::move(dense[k]));
  return out;
}

Polynomial join(const XPoly& a, const std::vector<std::string>& vars) {
  std::vector<Polynomial::Term> terms;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (int e = 0; e <= a[k].degree(); ++e)
      if (a[k].coeff(e) != 0) {
        const int ex[] = {static_cast<int>(k), e};
        terms.push_back({Monomial::from_exponents(ex), a[k].coeff(e)});
      }
  return Polynomial::from_terms(vars, std::move(terms));
}

void trim(XPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int xdeg(const XPoly& a) { return static_cast<int>(a.size()) - 1; }

UPoly content(const XPoly& a) {
  UPoly g;
  for (const auto& c : a) g = gcd(g, c);
  return g;
}

XPoly divide_coefficients(const XPoly& a, const UPoly& d) {
  XPoly out;
  for (const auto& c : a) out.push_back(c.divmod(d).first);
  return out;
}

XPoly primitive_part(const XPoly& a) {
  const UPoly c = content(a);
  if (c.is_zero() || c.degree() == 0) return a;
  return divide_coefficients(a, c);
}

// lc(b)^(deg a - deg b + 1) a = quotient * b + remainder.
std::pair<XPoly, XPoly> pseudo_divmod(XPoly a, const XPoly& b) {
  const int db = xdeg(b);
  if (xdeg(a) < db) return {{}, a};
  const UPoly& lb = b.back();
  XPoly q(xdeg(a) - db + 1);
  while (xdeg(a) >= db) {
    const int shift = xdeg(a) - db;
    const UPoly la = a.back();
    for (auto& c : q) c = lb * c;
    q[shift] = q[shift] + la;
    for (auto& c : a) c = lb * c;
    for (int k = 0; k <= db; ++k) a[k + shift] = a[k + shift] - la * b[k];
    trim(a);
  }
  return {q, a};
}

Rational sylvester_determinant(const std::vector<Rational>& p, const std::vector<Rational>& q) {
  const int m = static_cast<int>(p.size()) - 1;
  const int n = static_cast<int>(q.size()) - 1;
  const int size = m + n;
  std::vector<std::vector<Rational>> a(size, std::vector<Rational>(size, Rational(0)));
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) a[r][r + k] = p[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) a[n + r][r + k] = q[n - k];
  Rational det = 1;
  for (int c = 0; c < size; ++c) {
    int piv = c;
    while (piv < size && a[piv][c] == 0) ++piv;
    if (piv == size) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (int r = c + 1; r < size; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (int k = c; k < size; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

}  // namespace

UPoly eliminate_resultant(const Polynomial& p, const Polynomial& q) {
  require_bivariate(p);
  require_bivariate(q);
  if (p.vars() != q.vars()) throw std::invalid_argument("polynomials must share the variable list");
  if (p.is_zero() || q.is_zero()) throw ZeroResultant("resultant with the zero polynomial vanishes");
  const XPoly a = split(p);
  const XPoly b = split(q);
  const int m = xdeg(a);
  const int n = xdeg(b);
  if (m == 0 && n == 0) throw std::invalid_argument("neither polynomial involves the eliminated variable");
  const int bound = m * q.degree(1) + n * p.degree(1);

  std::vector<Rational> nodes, values;
  for (int k = 0; k <= bound; ++k) {
    const Rational lam(k);
    std::vector<Rational> pa, qb;
    for (const auto& c : a) pa.push_back(c.evaluate(lam));
    for (const auto& c : b) qb.push_back(c.evaluate(lam));
    nodes.push_back(lam);
    values.push_back(sylvester_determinant(pa, qb));
  }
  // Newton divided differences, then expansion to monomial form.
  const int d = bound;
  for (int lvl = 1; lvl <= d; ++lvl)
    for (int k = d; k >= lvl; --k) values[k] = (values[k] - values[k - 1]) / (nodes[k] - nodes[k - lvl]);
  UPoly result({values[d]});
  for (int k = d - 1; k >= 0; --k) result = result * UPoly({-nodes[k], Rational(1)}) + UPoly({values[k]});
  if (result.is_zero()) throw ZeroResultant("polynomials share a common factor in the eliminated variable");
  return result;
}

Polynomial bivariate_gcd(const Polynomial& p, const Polynomial& q) {
  require_bivariate(p);
  require_bivariate(q);
  if (p.is_zero()) return q;
  if (q.is_zero()) return p;
  XPoly a = split(p);
  XPoly b = split(q);
  trim(a);
  trim(b);
  const UPoly cont = gcd(content(a), content(b));
  a = primitive_part(a);
  b = primitive_part(b);
  if (xdeg(a) < xdeg(b)) std::swap(a, b);
  while (!b.empty() && xdeg(b) > 0) {
    XPoly r = pseudo_divmod(a, b).second;
    a = std::move(b);
    b = r.empty() ? XPoly{} : primitive_part(r);
  }
  XPoly g = b.empty() ? a : XPoly{UPoly({Rational(1)})};
  for (auto& c : g) c = cont * c;
  return join(g, p.vars());
}

Polynomial squarefree_in_first(const Polynomial& p) {
  require_bivariate(p);
  const Polynomial g = bivariate_gcd(p, p.derivative(0));
  if (g.degree(0) == 0) return p;
  const XPoly a = split(p);
  XPoly gx = split(g);
  trim(gx);
  auto [quot, rem] = pseudo_divmod(a, gx);
  if (!rem.empty()) throw std::logic_error("gcd does not divide its argument");
  trim(quot);
  return join(primitive_part(quot), p.vars());
}

}  // namespace varbound::exact
