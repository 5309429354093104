// Factorization over Z for square-free primitive polynomials: distinct- and
// equal-degree factorization modulo a prime above twice the Mignotte bound,
// followed by trial recombination of modular factors.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "varbound/exact/univariate.hpp"

namespace varbound::exact {

namespace {

using ZPoly = std::vector<Integer>;  // low to high, reduced into [0, p)

void trim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

Integer mod(const Integer& v, const Integer& p) {
  Integer r;
  mpz_mod(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
  return r;
}

Integer inverse(const Integer& v, const Integer& p) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::domain_error("element not invertible modulo p");
  return r;
}

ZPoly sub(const ZPoly& a, const ZPoly& b, const Integer& p) {
  ZPoly r(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[k];
  for (std::size_t k = 0; k < b.size(); ++k) r[k] = mod(r[k] - b[k], p);
  trim(r);
  return r;
}

ZPoly mul(const ZPoly& a, const ZPoly& b, const Integer& p) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  for (auto& c : r) c = mod(c, p);
  trim(r);
  return r;
}

// Quotient and remainder modulo p.
std::pair<ZPoly, ZPoly> divmod(ZPoly a, const ZPoly& b, const Integer& p) {
  if (b.empty()) throw std::domain_error("division by zero polynomial mod p");
  if (deg(a) < deg(b)) return {{}, a};
  const Integer inv = inverse(b.back(), p);
  ZPoly q(deg(a) - deg(b) + 1, Integer(0));
  for (int k = deg(a); k >= deg(b); --k) {
    if (a[k] == 0) continue;
    const Integer f = mod(a[k] * inv, p);
    q[k - deg(b)] = f;
    for (int i = 0; i <= deg(b); ++i) a[k - deg(b) + i] = mod(a[k - deg(b) + i] - f * b[i], p);
  }
  a.resize(deg(b));
  trim(a);
  trim(q);
  return {q, a};
}

ZPoly monic(ZPoly a, const Integer& p) {
  if (a.empty()) return a;
  const Integer inv = inverse(a.back(), p);
  for (auto& c : a) c = mod(c * inv, p);
  return a;
}

ZPoly gcd(ZPoly a, ZPoly b, const Integer& p) {
  while (!b.empty()) {
    ZPoly r = divmod(a, b, p).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a), p);
}

ZPoly powmod(const ZPoly& base, const Integer& e, const ZPoly& f, const Integer& p) {
  ZPoly result{Integer(1)};
  ZPoly b = divmod(base, f, p).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t k = bits; k-- > 0;) {
    result = divmod(mul(result, result, p), f, p).second;
    if (mpz_tstbit(e.get_mpz_t(), k)) result = divmod(mul(result, b, p), f, p).second;
  }
  return result;
}

ZPoly derivative(const ZPoly& a, const Integer& p) {
  if (a.size() < 2) return {};
  ZPoly r(a.size() - 1);
  for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = mod(a[k] * static_cast<unsigned long>(k), p);
  trim(r);
  return r;
}

// Distinct-degree factorization of a monic square-free polynomial.
std::vector<std::pair<ZPoly, int>> distinct_degree(ZPoly f, const Integer& p) {
  std::vector<std::pair<ZPoly, int>> out;
  const ZPoly x{Integer(0), Integer(1)};
  ZPoly h = x;
  int i = 0;
  while (deg(f) >= 2 * (i + 1)) {
    ++i;
    h = powmod(h, p, f, p);
    ZPoly g = gcd(f, sub(h, x, p), p);
    if (deg(g) > 0) {
      f = divmod(f, g, p).first;
      h = divmod(h, f, p).second;
      out.emplace_back(std::move(g), i);
    }
  }
  if (deg(f) > 0) out.emplace_back(monic(f, p), deg(f));
  return out;
}

// Cantor-Zassenhaus splitting of a product of degree-d factors.
void equal_degree(const ZPoly& g, int d, const Integer& p, gmp_randclass& rng, std::vector<ZPoly>& out) {
  if (deg(g) == d) {
    out.push_back(g);
    return;
  }
  Integer pd;
  mpz_pow_ui(pd.get_mpz_t(), p.get_mpz_t(), d);
  const Integer e = (pd - 1) / 2;
  while (true) {
    ZPoly a(deg(g));
    for (auto& c : a) c = rng.get_z_range(p);
    trim(a);
    if (deg(a) < 1) continue;
    ZPoly b = powmod(a, e, g, p);
    b = sub(b, ZPoly{Integer(1)}, p);
    const ZPoly h = gcd(g, b, p);
    if (deg(h) > 0 && deg(h) < deg(g)) {
      equal_degree(h, d, p, rng, out);
      equal_degree(divmod(g, h, p).first, d, p, rng, out);
      return;
    }
  }
}

ZPoly reduce(const UPoly& f, const Integer& p) {
  ZPoly r;
  for (const auto& c : f.coeffs()) r.push_back(mod(c.get_num(), p));
  trim(r);
  return r;
}

UPoly symmetric_lift(const ZPoly& a, const Integer& p) {
  const Integer half = p / 2;
  std::vector<Rational> v;
  for (const auto& c : a) v.emplace_back(c > half ? c - p : c);
  return UPoly(std::move(v));
}

}  // namespace

std::vector<UPoly> factor_squarefree(const UPoly& input) {
  UPoly f = input.primitive();
  if (f.degree() < 1) return {};
  if (f.degree() == 1) return {f};
  for (const auto& c : f.coeffs())
    if (c.get_den() != 1) throw std::logic_error("primitive form must have integer coefficients");

  // Mignotte-style coefficient bound for lc(f) times any factor.
  const int n = f.degree();
  Integer max_coeff = 0;
  for (const auto& c : f.coeffs()) max_coeff = std::max<Integer>(max_coeff, abs(c.get_num()));
  const std::size_t bits = n + mpz_sizeinbase(max_coeff.get_mpz_t(), 2) +
                           mpz_sizeinbase(f.lc().get_num_mpz_t(), 2) + static_cast<std::size_t>(std::log2(n + 1.0)) + 4;
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), bits);
  ZPoly fp;
  while (true) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    if (mod(f.lc().get_num(), p) == 0) continue;
    fp = monic(reduce(f, p), p);
    if (deg(gcd(fp, derivative(fp, p), p)) == 0) break;
  }

  gmp_randclass rng(gmp_randinit_default);
  rng.seed(20180514UL);
  std::vector<ZPoly> modular;
  for (const auto& [g, d] : distinct_degree(fp, p)) equal_degree(g, d, p, rng, modular);

  std::vector<UPoly> result;
  std::vector<ZPoly> remaining = std::move(modular);
  int s = 1;
  while (2 * s <= static_cast<int>(remaining.size())) {
    bool found = false;
    std::vector<int> idx(s);
    for (int k = 0; k < s; ++k) idx[k] = k;
    while (true) {
      ZPoly prod{mod(f.lc().get_num(), p)};
      for (int k : idx) prod = mul(prod, remaining[k], p);
      const UPoly candidate = symmetric_lift(prod, p).primitive();
      if (candidate.degree() >= 1 && f.divisible_by(candidate)) {
        result.push_back(candidate);
        f = f.divmod(candidate).first.primitive();
        for (int k = s - 1; k >= 0; --k) remaining.erase(remaining.begin() + idx[k]);
        found = true;
        break;
      }
      // Next combination.
      int k = s - 1;
      const int m = static_cast<int>(remaining.size());
      while (k >= 0 && idx[k] == m - s + k) --k;
      if (k < 0) break;
      ++idx[k];
      for (int t = k + 1; t < s; ++t) idx[t] = idx[t - 1] + 1;
    }
    if (!found) ++s;
  }
  if (f.degree() >= 1) result.push_back(f);
  std::sort(result.begin(), result.end(), [](const UPoly& a, const UPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return a.coeffs() < b.coeffs();
  });
  return result;
}

std::vector<std::pair<UPoly, int>> factor(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  std::vector<std::pair<UPoly, int>> out;
  for (const auto& [part, mult] : squarefree_decomposition(p))
    for (auto& irreducible : factor_squarefree(part)) out.emplace_back(std::move(irreducible), mult);
  return out;
}

}  // namespace varbound::exact
