#include "varbound/exact/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace varbound::exact {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto dot = text.find('.');
  try {
    if (dot == std::string::npos) {
      Rational q(text, 10);
      if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
      q.canonicalize();
      return q;
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    if (digits.empty() || digits == "-" || digits == "+") throw std::invalid_argument("bad decimal");
    if (digits[0] == '+') digits.erase(0, 1);
    Integer num(digits, 10);
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
    Rational q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("invalid rational literal: " + text);
  }
}

Rational from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite double has no rational value");
  Rational q(v);  // GMP conversion is exact
  return q;
}

GaussianRational GaussianRational::inverse() const {
  const Rational n = norm2();
  if (n == 0) throw std::domain_error("division by zero Gaussian rational");
  return {re / n, -im / n};
}

}  // namespace varbound::exact
