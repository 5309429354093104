#pragma once

// Dense univariate polynomials over the rationals: Euclidean algebra,
// square-free decomposition, Sturm-sequence real root isolation and
// factorization over the integers.

#include <string>
#include <utility>
#include <vector>

#include "varbound/exact/polynomial.hpp"
#include "varbound/exact/rational.hpp"

namespace varbound::exact {

class UPoly {
 public:
  UPoly() = default;
  /// Coefficients from the constant term upward; trailing zeros are trimmed.
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly monomial(const Rational& c, int degree);

  /// Requires every variable other than `var` to be absent.
  static UPoly from_polynomial(const Polynomial& p, int var);
  Polynomial to_polynomial(const std::vector<std::string>& vars, int var) const;

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& coeff(int k) const { return c_[k]; }
  const Rational& lc() const { return c_.back(); }

  Rational evaluate(const Rational& x) const;
  int sign_at(const Rational& x) const;
  double evaluate(double x) const;
  long double evaluate(long double x) const;

  UPoly derivative() const;
  UPoly monic() const;
  /// Integer coefficients, gcd 1, positive leading coefficient.
  UPoly primitive() const;
  /// Divides by the absolute content only (keeps the sign).
  UPoly positive_primitive() const;

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Quotient and remainder over the rationals.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  bool divisible_by(const UPoly& d) const;

  /// Readable integer-primitive layout, highest power first, e.g.
  /// "64λ^3 - 336λ^2 + 480λ - 181".
  std::string to_string(const std::string& var = "λ") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);
/// p / gcd(p, p') in primitive form.
UPoly squarefree_part(const UPoly& p);
/// Yun's algorithm: pairs (factor, multiplicity), factors primitive and
/// pairwise coprime.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& p);

struct IsolatedRoot {
  Rational lo;
  Rational hi;  ///< lo == hi for an exactly rational root
  double value = 0.0;

  Rational width() const { return hi - lo; }
  bool is_exact() const { return lo == hi; }
};

/// Sturm chain of a square-free polynomial (positive scalings only).
std::vector<UPoly> sturm_sequence(const UPoly& p);
/// Number of distinct real roots in (a, b] from a Sturm chain.
int sturm_count(const std::vector<UPoly>& chain, const Rational& a, const Rational& b);

/// Real roots of the square-free part, isolated in disjoint rational
/// intervals, each refined to width <= `width`, ascending. Empty when there
/// are no real roots.
std::vector<IsolatedRoot> isolate_real_roots(const UPoly& p, const Rational& width);
/// Bisects an isolating interval of a square-free polynomial to `width`.
IsolatedRoot refine_root(const UPoly& squarefree, IsolatedRoot root, const Rational& width);

/// Irreducible factors over the integers of a nonzero polynomial, with
/// multiplicity, each primitive with positive leading coefficient. The unit
/// and integer content are dropped.
std::vector<std::pair<UPoly, int>> factor(const UPoly& p);
/// Irreducible factors of a square-free primitive polynomial.
std::vector<UPoly> factor_squarefree(const UPoly& p);

}  // namespace varbound::exact
