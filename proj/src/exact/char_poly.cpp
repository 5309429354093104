#include "varbound/exact/char_poly.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace varbound::exact {

// ---- GaussianRationalMatrix ----------------------------------------------

GaussianRationalMatrix::GaussianRationalMatrix(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim) {
  if (dim < 0) throw std::invalid_argument("matrix dimension must be non-negative");
}

GaussianRationalMatrix::GaussianRationalMatrix(int dim, std::vector<GaussianRational> entries)
    : dim_(dim), e_(std::move(entries)) {
  if (dim < 0 || e_.size() != static_cast<std::size_t>(dim) * dim)
    throw std::invalid_argument("entry count does not match dimension");
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      if (!((*this)(i, j) == (*this)(j, i).conj())) {
        std::ostringstream os;
        os << "matrix is not exactly Hermitian at (" << i << ", " << j << ")";
        throw std::invalid_argument(os.str());
      }
}

GaussianRationalMatrix GaussianRationalMatrix::from_operator(const HermitianOperator& op) {
  const int n = op.dim();
  GaussianRationalMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const Complex z = op.matrix()(i, j);
      m.set(i, j, GaussianRational(from_double(z.real()), i == j ? Rational(0) : from_double(z.imag())));
    }
  return m;
}

void GaussianRationalMatrix::set(int i, int j, const GaussianRational& v) {
  if (i == j && v.im != 0) throw std::invalid_argument("diagonal entries of a Hermitian matrix must be real");
  e_[i * dim_ + j] = v;
  e_[j * dim_ + i] = v.conj();
}

GaussianRationalMatrix GaussianRationalMatrix::operator*(const GaussianRationalMatrix& o) const {
  if (o.dim_ != dim_) throw DimensionMismatch("matrix product of different dimensions");
  std::vector<GaussianRational> r(e_.size());
  for (int i = 0; i < dim_; ++i)
    for (int k = 0; k < dim_; ++k) {
      const auto& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < dim_; ++j) r[i * dim_ + j] = r[i * dim_ + j] + a * o(k, j);
    }
  GaussianRationalMatrix m(dim_);
  m.e_ = std::move(r);
  return m;
}

GaussianRationalMatrix GaussianRationalMatrix::operator+(const GaussianRationalMatrix& o) const {
  if (o.dim_ != dim_) throw DimensionMismatch("matrix sum of different dimensions");
  GaussianRationalMatrix m(dim_);
  for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] = e_[k] + o.e_[k];
  return m;
}

HermitianOperator GaussianRationalMatrix::to_operator() const {
  CMatrix m(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j) m(i, j) = Complex((*this)(i, j).re.get_d(), (*this)(i, j).im.get_d());
  return HermitianOperator::hermitian_part(m);
}

std::vector<std::string> system_variables(bool symmetry_reduce) {
  if (symmetry_reduce) return {"x", "λ"};
  return {"x", "y", "λ"};
}

namespace {

std::vector<Polynomial> with_derivatives(const Polynomial& d, bool symmetry_reduce) {
  std::vector<Polynomial> out{d, d.derivative(0)};
  if (!symmetry_reduce) out.push_back(d.derivative(1));
  return out;
}

// ---- exact expansion ------------------------------------------------------

struct GPoly {
  Polynomial re;
  Polynomial im;
};

GPoly gmul(const GPoly& a, const GPoly& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Monomial mono(bool reduced, int ex, int ey, int el) {
  if (reduced) {
    const int e[] = {ex, el};
    return Monomial::from_exponents(e);
  }
  const int e[] = {ex, ey, el};
  return Monomial::from_exponents(e);
}

}  // namespace

std::vector<Polynomial> char_poly_system(const GaussianRationalMatrix& X, const GaussianRationalMatrix& Y,
                                         bool symmetry_reduce) {
  if (X.dim() != Y.dim()) throw DimensionMismatch("X and Y must have the same dimension");
  const int n = X.dim();
  if (n < 1 || n > 12) throw std::invalid_argument("exact expansion supports dimensions 1..12");
  const auto vars = system_variables(symmetry_reduce);
  const bool r = symmetry_reduce;
  const GaussianRationalMatrix S = X * X + Y * Y;

  std::vector<GPoly> m(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Polynomial::Term> re, im;
      re.push_back({mono(r, 0, 0, 0), S(i, j).re});
      im.push_back({mono(r, 0, 0, 0), S(i, j).im});
      re.push_back({mono(r, 1, 0, 0), Rational(-2) * X(i, j).re});
      im.push_back({mono(r, 1, 0, 0), Rational(-2) * X(i, j).im});
      if (!r) {
        re.push_back({mono(r, 0, 1, 0), Rational(-2) * Y(i, j).re});
        im.push_back({mono(r, 0, 1, 0), Rational(-2) * Y(i, j).im});
      }
      if (i == j) {
        re.push_back({mono(r, 2, 0, 0), Rational(1)});
        if (!r) re.push_back({mono(r, 0, 2, 0), Rational(1)});
        re.push_back({mono(r, 0, 0, 1), Rational(-1)});
      }
      m[i * n + j] = {Polynomial::from_terms(vars, std::move(re)), Polynomial::from_terms(vars, std::move(im))};
    }

  // minors[mask] = det of rows [n - popcount(mask), n) restricted to the
  // columns in mask, built upward one row at a time.
  const std::uint32_t full = (1u << n) - 1;
  std::vector<GPoly> minors(static_cast<std::size_t>(full) + 1, GPoly{Polynomial(vars), Polynomial(vars)});
  minors[0] = {Polynomial::constant(vars, 1), Polynomial(vars)};
  for (int k = 1; k <= n; ++k) {
    const int row = n - k;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (std::popcount(mask) != k) continue;
      GPoly acc{Polynomial(vars), Polynomial(vars)};
      int before = 0;
      for (int c = 0; c < n; ++c) {
        if (!(mask & (1u << c))) continue;
        const GPoly& entry = m[row * n + c];
        const GPoly& minor = minors[mask & ~(1u << c)];
        if ((entry.re.is_zero() && entry.im.is_zero()) || (minor.re.is_zero() && minor.im.is_zero())) {
          ++before;
          continue;
        }
        const GPoly term = gmul(entry, minor);
        if (before % 2 == 0) {
          acc.re = acc.re + term.re;
          acc.im = acc.im + term.im;
        } else {
          acc.re = acc.re - term.re;
          acc.im = acc.im - term.im;
        }
        ++before;
      }
      minors[mask] = std::move(acc);
    }
    // Minors of the previous size are no longer needed.
    for (std::uint32_t mask = 1; mask <= full; ++mask)
      if (std::popcount(mask) == k - 1) minors[mask] = GPoly{Polynomial(vars), Polynomial(vars)};
  }
  const GPoly& det = minors[full];
  if (!det.im.is_zero())
    throw NonRealCoefficient("determinant has a nonzero imaginary coefficient: " + det.im.to_string());
  return with_derivatives(det.re, symmetry_reduce);
}

// ---- extended-precision interpolation --------------------------------------

namespace {

using Real = boost::multiprecision::mpfr_float;

struct Cx {
  Real re;
  Real im;
};

Cx cmul(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx csub(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx cdiv(const Cx& a, const Cx& b) {
  const Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

class PrecisionScope {
 public:
  explicit PrecisionScope(int bits) : old_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2);
  }
  ~PrecisionScope() { Real::default_precision(old_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned old_;
};

struct PrecisePair {
  int n = 0;
  std::vector<Cx> S, X, Y;  // row-major; S = X² + Y²
};

std::vector<Cx> matmul(const std::vector<Cx>& a, const std::vector<Cx>& b, int n) {
  std::vector<Cx> r(static_cast<std::size_t>(n) * n, Cx{Real(0), Real(0)});
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        const Cx t = cmul(a[i * n + k], b[k * n + j]);
        r[i * n + j].re += t.re;
        r[i * n + j].im += t.im;
      }
  return r;
}

void finish_pair(PrecisePair& p) {
  const auto xx = matmul(p.X, p.X, p.n);
  const auto yy = matmul(p.Y, p.Y, p.n);
  p.S.resize(xx.size());
  for (std::size_t k = 0; k < xx.size(); ++k) p.S[k] = {xx[k].re + yy[k].re, xx[k].im + yy[k].im};
}

using PairBuilder = std::function<PrecisePair()>;

Cx determinant(std::vector<Cx> a, int n) {
  Cx det{Real(1), Real(0)};
  for (int c = 0; c < n; ++c) {
    int piv = c;
    Real best = -1;
    for (int r = c; r < n; ++r) {
      const Real mag = a[r * n + c].re * a[r * n + c].re + a[r * n + c].im * a[r * n + c].im;
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (best == 0) return {Real(0), Real(0)};
    if (piv != c) {
      for (int k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
      det = {-det.re, -det.im};
    }
    const Cx pivot = a[c * n + c];
    det = cmul(det, pivot);
    for (int r = c + 1; r < n; ++r) {
      const Cx f = cdiv(a[r * n + c], pivot);
      for (int k = c + 1; k < n; ++k) a[r * n + k] = csub(a[r * n + k], cmul(f, a[c * n + k]));
    }
  }
  return det;
}

Cx shifted_det(const PrecisePair& p, const Real& x, const Real& y, const Real& lambda) {
  const int n = p.n;
  std::vector<Cx> m(static_cast<std::size_t>(n) * n);
  const Real diag = x * x + y * y - lambda;
  for (int k = 0; k < n * n; ++k) {
    m[k].re = p.S[k].re - 2 * (x * p.X[k].re + y * p.Y[k].re);
    m[k].im = p.S[k].im - 2 * (x * p.X[k].im + y * p.Y[k].im);
  }
  for (int i = 0; i < n; ++i) m[i * n + i].re += diag;
  return determinant(std::move(m), n);
}

// Converts samples at nodes 0..d (stride-separated inside `data`) into
// monomial coefficients, in place.
void interpolate_axis(std::vector<Real>& data, const std::vector<int>& dims, int axis) {
  const int d = dims[axis] - 1;
  std::size_t stride = 1;
  for (std::size_t k = axis + 1; k < dims.size(); ++k) stride *= dims[k];
  const std::size_t block = stride * dims[axis];
  std::vector<Real> v(d + 1), poly(d + 1);
  for (std::size_t base = 0; base < data.size(); base += block)
    for (std::size_t off = 0; off < stride; ++off) {
      for (int k = 0; k <= d; ++k) v[k] = data[base + off + k * stride];
      // Newton divided differences on integer nodes.
      for (int lvl = 1; lvl <= d; ++lvl)
        for (int k = d; k >= lvl; --k) v[k] = (v[k] - v[k - 1]) / lvl;
      std::fill(poly.begin(), poly.end(), Real(0));
      poly[0] = v[d];
      for (int k = d - 1; k >= 0; --k) {
        // poly <- poly * (t - k) + v[k]
        for (int e = d; e >= 1; --e) poly[e] = poly[e - 1] - poly[e] * k;
        poly[0] = -poly[0] * k + v[k];
      }
      for (int k = 0; k <= d; ++k) data[base + off + k * stride] = poly[k];
    }
}

// Best continued-fraction convergent within `tol` with denominator at most
// 2^64, or nullopt.
std::optional<Rational> reconstruct(const Real& c, const Real& tol) {
  if (abs(c) <= tol) return Rational(0);
  const bool neg = c < 0;
  const Real target = abs(c);
  Real r = target;
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Integer cap = 1;
  mpz_mul_2exp(cap.get_mpz_t(), cap.get_mpz_t(), 64);
  for (int iter = 0; iter < 200; ++iter) {
    Real fl = floor(r);
    Integer a;
    mpfr_get_z(a.get_mpz_t(), fl.backend().data(), MPFR_RNDD);
    const Integer h = a * h1 + h2;
    const Integer k = a * k1 + k2;
    if (k > cap) return std::nullopt;
    Rational q(h, k);
    q.canonicalize();
    if (abs(target - to_real(q)) <= tol * (target > 1 ? target : Real(1))) return neg ? Rational(-q) : q;
    const Real frac = r - fl;
    if (frac == 0) return std::nullopt;
    r = 1 / frac;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return std::nullopt;
}

Real evaluate_mp(const Polynomial& p, const std::vector<Real>& point, Real& magnitude) {
  Real acc = 0;
  magnitude = 0;
  for (const auto& t : p.terms()) {
    Real m = to_real(t.coeff);
    for (int k = 0; k < p.nvars(); ++k)
      for (int e = t.mono.exponent(k); e > 0; --e) m *= point[k];
    acc += m;
    magnitude += abs(m);
  }
  return acc;
}

std::vector<Polynomial> interpolate_system(const PairBuilder& build, int precision_bits, bool symmetry_reduce) {
  if (precision_bits < 128) throw std::invalid_argument("interpolation precision must be at least 128 bits");
  const auto vars = system_variables(symmetry_reduce);
  const int nv = static_cast<int>(vars.size());

  // Degrees: 2n in x and y, n in λ.
  int n = 0;
  {
    PrecisionScope probe(64);
    n = build().n;
  }
  if (n < 1) throw std::invalid_argument("empty operator pair");
  std::vector<int> dims(nv);
  for (int k = 0; k < nv; ++k) dims[k] = (k == nv - 1 ? n : 2 * n) + 1;
  int guard = 64;
  for (int d : dims) guard += (d - 1) * static_cast<int>(std::ceil(std::log2(d + 1.0)));
  PrecisionScope scope(precision_bits + guard);
  const PrecisePair pair = build();

  std::size_t total = 1;
  for (int d : dims) total *= d;
  std::vector<Real> re(total), im(total);
  std::vector<int> idx(nv, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (int k = nv - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(rem % dims[k]);
      rem /= dims[k];
    }
    const Real x = idx[0];
    const Real y = symmetry_reduce ? Real(0) : Real(idx[1]);
    const Real lambda = idx[nv - 1];
    const Cx d = shifted_det(pair, x, y, lambda);
    re[flat] = d.re;
    im[flat] = d.im;
  }
  for (int axis = 0; axis < nv; ++axis) {
    interpolate_axis(re, dims, axis);
    interpolate_axis(im, dims, axis);
  }

  Real tol = 1;
  tol = ldexp(tol, -precision_bits / 2);
  std::vector<Polynomial::Term> terms;
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    std::vector<int> e(nv);
    for (int k = nv - 1; k >= 0; --k) {
      e[k] = static_cast<int>(rem % dims[k]);
      rem /= dims[k];
    }
    const Real scale = abs(re[flat]) > 1 ? abs(re[flat]) : Real(1);
    if (abs(im[flat]) > tol * scale)
      throw NonRealCoefficient("interpolated determinant has a nonzero imaginary coefficient");
    const auto q = reconstruct(re[flat], tol);
    if (!q) {
      std::ostringstream os;
      os << "coefficient " << re[flat].str(20) << " has no rational reconstruction with denominator <= 2^64";
      throw ReconstructionError(os.str(), 1.0);
    }
    if (*q != 0) terms.push_back({Monomial::from_exponents(e), *q});
  }
  const Polynomial det = Polynomial::from_terms(vars, std::move(terms));

  // Re-verify at ten fresh non-grid points.
  Real vtol = 1;
  vtol = ldexp(vtol, -precision_bits / 4);
  for (int k = 0; k < 10; ++k) {
    const Rational qx(2 * k + 1, 3), qy(3 * k - 7, 5), ql(k + 1, 7);
    std::vector<Real> point{to_real(qx)};
    if (!symmetry_reduce) point.push_back(to_real(qy));
    point.push_back(to_real(ql));
    const Cx direct = shifted_det(pair, point[0], symmetry_reduce ? Real(0) : point[1], point.back());
    Real mag;
    const Real value = evaluate_mp(det, point, mag);
    const Real denom = mag > 1 ? mag : Real(1);
    const Real residual = (abs(direct.re - value) + abs(direct.im)) / denom;
    if (residual > vtol) {
      std::ostringstream os;
      os << "reconstructed determinant fails verification (relative residual " << residual.str(6) << ")";
      throw ReconstructionError(os.str(), residual.convert_to<double>());
    }
  }
  return with_derivatives(det, symmetry_reduce);
}

// Continued-fraction p/q with q <= 2^16 within four ulps of v.
std::optional<Rational> short_rational(double v) {
  const double tol = 4 * std::abs(std::nextafter(v, INFINITY) - v);
  double r = std::abs(v);
  long long h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  for (int iter = 0; iter < 40; ++iter) {
    const double fl = std::floor(r);
    if (fl > 1e15) return std::nullopt;
    const auto a = static_cast<long long>(fl);
    const long long h = a * h1 + h2, k = a * k1 + k2;
    if (k > (1LL << 16)) return std::nullopt;
    if (std::abs(std::abs(v) - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
      Rational q(Integer(std::to_string(v < 0 ? -h : h), 10), Integer(std::to_string(k), 10));
      q.canonicalize();
      return q;
    }
    if (r == fl) return std::nullopt;
    r = 1 / (r - fl);
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
  }
  return std::nullopt;
}

// A double entry read at working precision: a short rational, or ± the root
// of one, when it matches to a few ulps; otherwise its exact binary value.
Real lift_entry(double v) {
  if (v == 0) return Real(0);
  if (const auto q = short_rational(v)) return to_real(*q);
  if (const auto q = short_rational(v * v); q && *q > 0) {
    const Real root = sqrt(to_real(*q));
    if (std::abs(root.convert_to<double>() - std::abs(v)) <= 4 * std::abs(std::nextafter(v, INFINITY) - v))
      return v < 0 ? Real(-root) : root;
  }
  return Real(v);
}

}  // namespace

std::vector<Polynomial> char_poly_interpolated(const HermitianOperator& X, const HermitianOperator& Y,
                                               int precision_bits, bool symmetry_reduce) {
  if (X.dim() != Y.dim()) throw DimensionMismatch("X and Y must have the same dimension");
  const PairBuilder build = [&] {
    PrecisePair p;
    p.n = X.dim();
    for (int i = 0; i < p.n; ++i)
      for (int j = 0; j < p.n; ++j) {
        p.X.push_back({lift_entry(X.matrix()(i, j).real()), lift_entry(X.matrix()(i, j).imag())});
        p.Y.push_back({lift_entry(Y.matrix()(i, j).real()), lift_entry(Y.matrix()(i, j).imag())});
      }
    finish_pair(p);
    return p;
  };
  return interpolate_system(build, precision_bits, symmetry_reduce);
}

std::vector<Polynomial> char_poly_interpolated_angular(int two_j, int precision_bits, bool symmetry_reduce) {
  if (two_j < 1) throw std::invalid_argument("2j must be a positive integer");
  const PairBuilder build = [two_j] {
    PrecisePair p;
    p.n = two_j + 1;
    const std::size_t nn = static_cast<std::size_t>(p.n) * p.n;
    p.X.assign(nn, Cx{Real(0), Real(0)});
    p.Y.assign(nn, Cx{Real(0), Real(0)});
    const Rational j(two_j, 2);
    // Basis ordered m = j, j-1, ..., -j; J+ couples column k to row k-1.
    for (int k = 1; k < p.n; ++k) {
      const Rational m = j - k;
      Rational sq = j * (j + 1) - m * (m + 1);
      const Real half = sqrt(to_real(sq)) / 2;
      p.X[(k - 1) * p.n + k] = {half, Real(0)};
      p.X[k * p.n + (k - 1)] = {half, Real(0)};
      p.Y[(k - 1) * p.n + k] = {Real(0), -half};
      p.Y[k * p.n + (k - 1)] = {Real(0), half};
    }
    finish_pair(p);
    return p;
  };
  return interpolate_system(build, precision_bits, symmetry_reduce);
}

}  // namespace varbound::exact
