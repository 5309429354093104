#pragma once

// Sparse multivariate polynomials over the rationals in at most four
// variables, kept in lex order with the first variable most significant.

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "varbound/exact/rational.hpp"

namespace varbound::exact {

inline constexpr int kMaxVariables = 4;
inline constexpr int kMaxExponent = 0xFFFF;

/// Exponent vector packed 16 bits per variable, variable 0 in the top bits, so
/// integer comparison is lex comparison.
class Monomial {
 public:
  constexpr Monomial() = default;
  static Monomial from_exponents(std::span<const int> exps);
  static Monomial variable(int var, int power = 1);

  int exponent(int var) const { return static_cast<int>((bits_ >> shift(var)) & 0xFFFF); }
  int total_degree() const;
  bool is_one() const { return bits_ == 0; }

  Monomial operator*(Monomial o) const;
  /// Requires divides(o, *this).
  Monomial operator/(Monomial o) const { return Monomial(bits_ - o.bits_); }
  bool divides(Monomial o) const;  ///< this | o
  Monomial lcm(Monomial o) const;
  bool coprime(Monomial o) const;

  std::uint64_t bits() const { return bits_; }
  friend constexpr auto operator<=>(Monomial a, Monomial b) = default;

 private:
  explicit constexpr Monomial(std::uint64_t b) : bits_(b) {}
  static constexpr int shift(int var) { return 48 - 16 * var; }

  std::uint64_t bits_ = 0;
};

enum class MonomialOrder { Lex };

class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> vars);

  static Polynomial constant(std::vector<std::string> vars, const Rational& c);
  static Polynomial variable(std::vector<std::string> vars, int index);
  /// Sorts, combines like terms and drops zeros.
  static Polynomial from_terms(std::vector<std::string> vars, std::vector<Term> terms);

  const std::vector<std::string>& vars() const { return vars_; }
  int nvars() const { return static_cast<int>(vars_.size()); }
  int var_index(const std::string& name) const;
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  const Term& leading() const;

  int degree(int var) const;
  int total_degree() const;
  /// Index of the most significant variable that occurs, nvars() if constant.
  int highest_variable() const;
  bool involves(int var) const { return degree(var) > 0; }

  Polynomial derivative(int var) const;
  Polynomial substitute(int var, const Rational& value) const;
  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;
  long double evaluate(std::span<const long double> point) const;
  /// Sum of |c| * prod |x_k|^e_k, the natural scale for residual tests.
  long double magnitude(std::span<const long double> point) const;

  Polynomial monic() const;
  /// Integer coefficients with gcd 1 and positive leading coefficient.
  Polynomial primitive() const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& a);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  /// Removes the leading term (no-op on zero).
  void drop_leading();
  /// Appends a term below every existing term; precondition not checked.
  void append_trailing(Term t) { terms_.push_back(std::move(t)); }

  /// this - c * m * g, merging in one pass.
  Polynomial sub_scaled(const Rational& c, Monomial m, const Polynomial& g) const;

  std::string to_string() const;
  std::string to_json() const;
  static Polynomial from_json(const std::string& text);

 private:
  void check_compatible(const Polynomial& o) const;

  std::vector<std::string> vars_;
  std::vector<Term> terms_;  // strictly descending monomials, no zero coefficients
};

}  // namespace varbound::exact
