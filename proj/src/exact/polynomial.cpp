#include "varbound/exact/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace varbound::exact {

// ---- Monomial -------------------------------------------------------------

Monomial Monomial::from_exponents(std::span<const int> exps) {
  if (exps.size() > static_cast<std::size_t>(kMaxVariables))
    throw std::invalid_argument("too many variables for a monomial");
  std::uint64_t b = 0;
  for (std::size_t k = 0; k < exps.size(); ++k) {
    if (exps[k] < 0 || exps[k] > kMaxExponent) throw std::out_of_range("monomial exponent out of range");
    b |= static_cast<std::uint64_t>(exps[k]) << shift(static_cast<int>(k));
  }
  return Monomial(b);
}

Monomial Monomial::variable(int var, int power) {
  if (var < 0 || var >= kMaxVariables) throw std::out_of_range("variable index out of range");
  if (power < 0 || power > kMaxExponent) throw std::out_of_range("monomial exponent out of range");
  return Monomial(static_cast<std::uint64_t>(power) << shift(var));
}

int Monomial::total_degree() const {
  int d = 0;
  for (int k = 0; k < kMaxVariables; ++k) d += exponent(k);
  return d;
}

Monomial Monomial::operator*(Monomial o) const {
  for (int k = 0; k < kMaxVariables; ++k)
    if (exponent(k) + o.exponent(k) > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
  return Monomial(bits_ + o.bits_);
}

bool Monomial::divides(Monomial o) const {
  for (int k = 0; k < kMaxVariables; ++k)
    if (exponent(k) > o.exponent(k)) return false;
  return true;
}

Monomial Monomial::lcm(Monomial o) const {
  std::uint64_t b = 0;
  for (int k = 0; k < kMaxVariables; ++k)
    b |= static_cast<std::uint64_t>(std::max(exponent(k), o.exponent(k))) << shift(k);
  return Monomial(b);
}

bool Monomial::coprime(Monomial o) const {
  for (int k = 0; k < kMaxVariables; ++k)
    if (exponent(k) > 0 && o.exponent(k) > 0) return false;
  return true;
}

// ---- Polynomial -----------------------------------------------------------

Polynomial::Polynomial(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (vars_.size() > static_cast<std::size_t>(kMaxVariables))
    throw std::invalid_argument("at most four polynomial variables are supported");
}

Polynomial Polynomial::constant(std::vector<std::string> vars, const Rational& c) {
  Polynomial p(std::move(vars));
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(std::vector<std::string> vars, int index) {
  Polynomial p(std::move(vars));
  if (index < 0 || index >= p.nvars()) throw std::out_of_range("variable index out of range");
  p.terms_.push_back({Monomial::variable(index), Rational(1)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
  Polynomial p(std::move(vars));
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

int Polynomial::var_index(const std::string& name) const {
  const auto it = std::find(vars_.begin(), vars_.end(), name);
  if (it == vars_.end()) throw std::out_of_range("unknown variable " + name);
  return static_cast<int>(it - vars_.begin());
}

const Polynomial::Term& Polynomial::leading() const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no leading term");
  return terms_.front();
}

int Polynomial::degree(int var) const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(var));
  return d;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.total_degree());
  return d;
}

int Polynomial::highest_variable() const {
  for (int k = 0; k < nvars(); ++k)
    if (involves(k)) return k;
  return nvars();
}

Polynomial Polynomial::derivative(int var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    const int e = t.mono.exponent(var);
    if (e == 0) continue;
    out.push_back({t.mono / Monomial::variable(var), t.coeff * e});
  }
  return from_terms(vars_, std::move(out));
}

Polynomial Polynomial::substitute(int var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    const int e = t.mono.exponent(var);
    Rational c = t.coeff;
    if (e > 0) {
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e);
      mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e);
      pw.canonicalize();
      c *= pw;
    }
    out.push_back({t.mono / Monomial::variable(var, e), c});
  }
  return from_terms(vars_, std::move(out));
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("evaluation point has wrong arity");
  Rational acc = 0;
  for (const auto& t : terms_) {
    Rational m = t.coeff;
    for (int k = 0; k < nvars(); ++k)
      for (int e = t.mono.exponent(k); e > 0; --e) m *= point[k];
    acc += m;
  }
  return acc;
}

namespace {

template <class T>
T evaluate_float(const std::vector<Polynomial::Term>& terms, std::span<const T> point, int nvars) {
  T acc = 0;
  for (const auto& t : terms) {
    T m = static_cast<T>(t.coeff.get_d());
    for (int k = 0; k < nvars; ++k) {
      const int e = t.mono.exponent(k);
      if (e > 0) m *= std::pow(point[k], static_cast<T>(e));
    }
    acc += m;
  }
  return acc;
}

}  // namespace

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("evaluation point has wrong arity");
  return evaluate_float<double>(terms_, point, nvars());
}

long double Polynomial::evaluate(std::span<const long double> point) const {
  if (point.size() != vars_.size()) throw std::invalid_argument("evaluation point has wrong arity");
  return evaluate_float<long double>(terms_, point, nvars());
}

long double Polynomial::magnitude(std::span<const long double> point) const {
  long double acc = 0;
  for (const auto& t : terms_) {
    long double m = std::abs(static_cast<long double>(t.coeff.get_d()));
    for (int k = 0; k < nvars(); ++k) {
      const int e = t.mono.exponent(k);
      if (e > 0) m *= std::pow(std::abs(point[k]), static_cast<long double>(e));
    }
    acc += m;
  }
  return acc;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  const Rational inv = 1 / terms_.front().coeff;
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= inv;
  return p;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  Integer lcm_den = 1;
  for (const auto& t : terms_) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), t.coeff.get_den_mpz_t());
  Integer g = 0;
  for (const auto& t : terms_) {
    const Integer n = t.coeff.get_num() * (lcm_den / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational scale(lcm_den, g);
  scale.canonicalize();
  if (terms_.front().coeff < 0) scale = -scale;
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff *= scale;
  return p;
}

void Polynomial::drop_leading() {
  if (!terms_.empty()) terms_.erase(terms_.begin());
}

void Polynomial::check_compatible(const Polynomial& o) const {
  if (vars_ != o.vars_) throw std::invalid_argument("polynomials use different variable lists");
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial Polynomial::sub_scaled(const Rational& c, Monomial m, const Polynomial& g) const {
  Polynomial out(vars_);
  out.terms_.reserve(terms_.size() + g.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < g.terms_.size()) {
    if (j == g.terms_.size()) {
      out.terms_.push_back(terms_[i++]);
      continue;
    }
    const Monomial gm = g.terms_[j].mono * m;
    if (i < terms_.size() && terms_[i].mono > gm) {
      out.terms_.push_back(terms_[i++]);
    } else if (i < terms_.size() && terms_[i].mono == gm) {
      Rational v = terms_[i].coeff - c * g.terms_[j].coeff;
      if (v != 0) out.terms_.push_back({gm, std::move(v)});
      ++i;
      ++j;
    } else {
      out.terms_.push_back({gm, -c * g.terms_[j].coeff});
      ++j;
    }
  }
  return out;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  return a.sub_scaled(Rational(-1), Monomial{}, b);
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  return a.sub_scaled(Rational(1), Monomial{}, b);
}

Polynomial operator*(const Rational& c, const Polynomial& a) {
  if (c == 0) return Polynomial(a.vars_);
  Polynomial p = a;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  std::vector<Polynomial::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
  return Polynomial::from_terms(a.vars_, std::move(out));
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (a.terms_[k].mono != b.terms_[k].mono || a.terms_[k].coeff != b.terms_[k].coeff) return false;
  return true;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    const bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    const bool unit = c == 1 && !t.mono.is_one();
    if (!unit) os << exact::to_string(c);
    for (int k = 0; k < nvars(); ++k) {
      const int e = t.mono.exponent(k);
      if (e == 0) continue;
      os << vars_[k];
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

std::string Polynomial::to_json() const {
  nlohmann::json doc;
  doc["vars"] = vars_;
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : terms_) {
    std::vector<int> exps(vars_.size());
    for (int k = 0; k < nvars(); ++k) exps[k] = t.mono.exponent(k);
    terms.push_back({exps, exact::to_string(t.coeff)});
  }
  doc["terms"] = std::move(terms);
  return doc.dump();
}

Polynomial Polynomial::from_json(const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  std::vector<std::string> vars = doc.at("vars").get<std::vector<std::string>>();
  std::vector<Term> terms;
  for (const auto& t : doc.at("terms")) {
    const auto exps = t.at(0).get<std::vector<int>>();
    if (exps.size() != vars.size()) throw std::invalid_argument("term arity differs from variable count");
    terms.push_back({Monomial::from_exponents(exps), parse_rational(t.at(1).get<std::string>())});
  }
  return from_terms(std::move(vars), std::move(terms));
}

}  // namespace varbound::exact
