#pragma once

#include <string>

#include <gmpxx.h>

namespace varbound::exact {

/// Arbitrary-precision rational, always canonical (den > 0, gcd = 1).
using Rational = mpq_class;
using Integer = mpz_class;

/// "num/den", or "num" when den == 1.
std::string to_string(const Rational& q);
/// Accepts "num/den", "num" and finite decimal literals such as "-0.125".
Rational parse_rational(const std::string& text);
/// Exact value of a finite double.
Rational from_double(double v);

/// a + b i over the rationals.
struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm2() const { return re * re + im * im; }
  GaussianRational inverse() const;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }
  GaussianRational operator-() const { return {-re, -im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

}  // namespace varbound::exact
