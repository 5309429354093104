#include "varbound/exact/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace varbound::exact {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::monomial(const Rational& c, int degree) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::from_polynomial(const Polynomial& p, int var) {
  std::vector<Rational> v(p.degree(var) + 1, Rational(0));
  for (const auto& t : p.terms()) {
    const int e = t.mono.exponent(var);
    if (t.mono.total_degree() != e) throw std::invalid_argument("polynomial is not univariate in the requested variable");
    v[e] += t.coeff;
  }
  return UPoly(std::move(v));
}

Polynomial UPoly::to_polynomial(const std::vector<std::string>& vars, int var) const {
  std::vector<Polynomial::Term> terms;
  for (int k = 0; k <= degree(); ++k)
    if (c_[k] != 0) terms.push_back({Monomial::variable(var, k), c_[k]});
  return Polynomial::from_terms(vars, std::move(terms));
}

Rational UPoly::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k];
  return acc;
}

int UPoly::sign_at(const Rational& x) const { return sgn(evaluate(x)); }

double UPoly::evaluate(double x) const {
  double acc = 0;
  for (int k = degree(); k >= 0; --k) acc = acc * x + c_[k].get_d();
  return acc;
}

long double UPoly::evaluate(long double x) const {
  long double acc = 0;
  for (int k = degree(); k >= 0; --k) acc = acc * x + static_cast<long double>(c_[k].get_d());
  return acc;
}

UPoly UPoly::derivative() const {
  if (degree() < 1) return UPoly();
  std::vector<Rational> v(degree());
  for (int k = 1; k <= degree(); ++k) v[k - 1] = c_[k] * k;
  return UPoly(std::move(v));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return (1 / lc()) * *this;
}

UPoly UPoly::positive_primitive() const {
  if (is_zero()) return *this;
  Integer lcm_den = 1;
  for (const auto& c : c_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
  Integer g = 0;
  for (const auto& c : c_) {
    const Integer n = c.get_num() * (lcm_den / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational s(lcm_den, g);
  s.canonicalize();
  return s * *this;
}

UPoly UPoly::primitive() const {
  UPoly p = positive_primitive();
  if (!p.is_zero() && p.lc() < 0) p = -p;
  return p;
}

UPoly UPoly::operator-() const {
  UPoly p = *this;
  for (auto& c : p.c_) c = -c;
  return p;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> v(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t k = 0; k < a.c_.size(); ++k) v[k] += a.c_[k];
  for (std::size_t k = 0; k < b.c_.size(); ++k) v[k] += b.c_[k];
  return UPoly(std::move(v));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(v));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  if (s == 0) return UPoly();
  UPoly p = a;
  for (auto& c : p.c_) c *= s;
  return p;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {UPoly(), *this};
  std::vector<Rational> r = c_;
  std::vector<Rational> q(degree() - d.degree() + 1, Rational(0));
  const Rational inv = 1 / d.lc();
  for (int k = degree(); k >= d.degree(); --k) {
    if (r[k] == 0) continue;
    const Rational f = r[k] * inv;
    q[k - d.degree()] = f;
    for (int i = 0; i <= d.degree(); ++i) r[k - d.degree() + i] -= f * d.c_[i];
  }
  r.resize(d.degree());
  return {UPoly(std::move(q)), UPoly(std::move(r))};
}

bool UPoly::divisible_by(const UPoly& d) const { return divmod(d).second.is_zero(); }

std::string UPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    if (c_[k] == 0) continue;
    Rational c = c_[k];
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    if (!(c == 1 && k > 0)) os << exact::to_string(c);
    if (k >= 1) os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a.positive_primitive();
  UPoly y = b.positive_primitive();
  while (!y.is_zero()) {
    UPoly r = x.divmod(y).second.positive_primitive();
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly squarefree_part(const UPoly& p) {
  if (p.degree() < 1) return p.primitive();
  const UPoly g = gcd(p, p.derivative());
  return p.divmod(g).first.primitive();
}

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p) {
  std::vector<std::pair<UPoly, int>> out;
  if (p.degree() < 1) return out;
  UPoly a = p.primitive();
  UPoly b = a.derivative();
  UPoly c = gcd(a, b);
  UPoly w = a.divmod(c).first;
  UPoly y = b.divmod(c).first;
  int k = 1;
  while (w.degree() >= 1) {
    const UPoly z = y - w.derivative();
    const UPoly g = z.is_zero() ? w.monic() : gcd(w, z);
    if (g.degree() >= 1) out.emplace_back(g.primitive(), k);
    w = w.divmod(g).first;
    y = z.divmod(g).first;
    ++k;
  }
  return out;
}

std::vector<UPoly> sturm_sequence(const UPoly& p) {
  std::vector<UPoly> chain;
  if (p.is_zero()) return chain;
  chain.push_back(p.positive_primitive());
  UPoly d = p.derivative().positive_primitive();
  if (d.is_zero()) return chain;
  chain.push_back(std::move(d));
  while (true) {
    UPoly r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back((-r).positive_primitive());
  }
  return chain;
}

namespace {

int variations(const std::vector<UPoly>& chain, const Rational& x) {
  int v = 0;
  int prev = 0;
  for (const auto& q : chain) {
    const int s = q.sign_at(x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

Rational cauchy_bound(const UPoly& p) {
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) {
    Rational r = abs(p.coeff(k) / p.lc());
    if (r > m) m = r;
  }
  // Round up to an integer so the endpoints stay simple.
  Integer up;
  mpz_cdiv_q(up.get_mpz_t(), m.get_num_mpz_t(), m.get_den_mpz_t());
  return Rational(up + 1);
}

}  // namespace

int sturm_count(const std::vector<UPoly>& chain, const Rational& a, const Rational& b) {
  return variations(chain, a) - variations(chain, b);
}

IsolatedRoot refine_root(const UPoly& p, IsolatedRoot root, const Rational& width) {
  if (!root.is_exact()) {
    const int s_lo = p.sign_at(root.lo);
    while (root.hi - root.lo > width) {
      Rational mid = (root.lo + root.hi) / 2;
      const int s = p.sign_at(mid);
      if (s == 0) {
        root.lo = mid;
        root.hi = mid;
        break;
      }
      if (s == s_lo)
        root.lo = std::move(mid);
      else
        root.hi = std::move(mid);
    }
  }
  root.value = Rational((root.lo + root.hi) / 2).get_d();
  return root;
}

std::vector<IsolatedRoot> isolate_real_roots(const UPoly& p, const Rational& width) {
  if (p.is_zero()) throw std::invalid_argument("cannot isolate roots of the zero polynomial");
  if (!(width > 0)) throw std::invalid_argument("isolation width must be positive");
  std::vector<IsolatedRoot> out;
  const UPoly sf = squarefree_part(p);
  if (sf.degree() < 1) return out;
  const auto chain = sturm_sequence(sf);
  const Rational bound = cauchy_bound(sf);
  struct Range {
    Rational a, b;
  };
  std::vector<Range> stack{{-bound, bound}};
  while (!stack.empty()) {
    Range r = std::move(stack.back());
    stack.pop_back();
    const int n = sturm_count(chain, r.a, r.b);
    if (n == 0) continue;
    if (n == 1) {
      out.push_back({r.a, r.b, 0.0});
      continue;
    }
    const Rational mid = (r.a + r.b) / 2;
    if (sf.sign_at(mid) != 0) {
      stack.push_back({r.a, mid});
      stack.push_back({mid, r.b});
      continue;
    }
    // Rational root at the midpoint: carve out a root-free neighbourhood.
    out.push_back({mid, mid, mid.get_d()});
    Rational e = (r.b - r.a) / 4;
    while (sf.sign_at(mid - e) == 0 || sf.sign_at(mid + e) == 0 || sturm_count(chain, mid - e, mid + e) != 1)
      e /= 2;
    stack.push_back({r.a, mid - e});
    stack.push_back({mid + e, r.b});
  }
  for (auto& root : out) root = refine_root(sf, root, width);
  std::sort(out.begin(), out.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });
  return out;
}

}  // namespace varbound::exact
