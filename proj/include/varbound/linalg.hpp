#pragma once

// Dense Hermitian linear algebra shared by every engine: the operator type,
// spectra, density states and the angular momentum constructors.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace varbound {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitian : public std::invalid_argument {
 public:
  NotHermitian(const std::string& what, int row, int col, double deviation)
      : std::invalid_argument(what), row_(row), col_(col), deviation_(deviation) {}
  int row() const { return row_; }
  int col() const { return col_; }
  double deviation() const { return deviation_; }

 private:
  int row_;
  int col_;
  double deviation_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kHermitianTolerance = 1e-12;

/// Dense complex Hermitian matrix. Stored entries are exactly Hermitian.
class HermitianOperator {
 public:
  HermitianOperator() : HermitianOperator(CMatrix::Zero(1, 1)) {}

  /// Validates Hermiticity to kHermitianTolerance (absolute), then stores the
  /// Hermitian part. Throws NotHermitian naming the worst entry otherwise.
  explicit HermitianOperator(const CMatrix& entries);

  /// Stores the Hermitian part without validation; for operators derived
  /// algebraically from already-Hermitian ones.
  static HermitianOperator hermitian_part(const CMatrix& m);

  static HermitianOperator identity(int dim);
  static HermitianOperator zero(int dim);
  static HermitianOperator diagonal(const Eigen::VectorXd& diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

  HermitianOperator square() const;
  double trace() const { return m_.trace().real(); }
  /// Spectral norm.
  double norm() const;

  HermitianOperator operator-() const { return hermitian_part(-m_); }
  friend HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b);
  friend HermitianOperator operator*(double s, const HermitianOperator& a);
  friend HermitianOperator operator*(const HermitianOperator& a, double s) { return s * a; }

  /// Adds c times the identity.
  HermitianOperator shifted(double c) const;

 private:
  struct Trusted {};
  HermitianOperator(CMatrix m, Trusted) : m_(std::move(m)) {}

  CMatrix m_;
};

/// Ascending eigenvalues with matching orthonormal eigenvector columns.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  CMatrix eigenvectors;

  int size() const { return static_cast<int>(eigenvalues.size()); }
  double min() const { return eigenvalues(0); }
  double max() const { return eigenvalues(eigenvalues.size() - 1); }
};

Spectrum eig(const HermitianOperator& h);
Eigen::VectorXd eigenvalues(const HermitianOperator& h);

/// Positive semidefinite, unit-trace density matrix.
class DensityState {
 public:
  explicit DensityState(const CMatrix& rho);

  /// |psi><psi| for a (not necessarily normalized) nonzero vector.
  static DensityState pure(const CVector& psi);
  static DensityState maximally_mixed(int dim);

  int dim() const { return static_cast<int>(rho_.rows()); }
  const CMatrix& matrix() const { return rho_; }

 private:
  struct Trusted {};
  DensityState(CMatrix m, Trusted) : rho_(std::move(m)) {}

  CMatrix rho_;
};

struct AngularMomentum {
  HermitianOperator jx;
  HermitianOperator jy;
  HermitianOperator jz;
};

/// Spin-j operators in the J_Z eigenbasis (m = j, j-1, ..., -j). The quantum
/// number is passed as the positive integer 2j.
AngularMomentum angular_momentum(int two_j);

double expectation(const HermitianOperator& f, const DensityState& rho);
/// <psi|F|psi> for a normalized vector.
double expectation(const HermitianOperator& f, const CVector& psi);

/// Var(X) + Var(Y) = <X^2 + Y^2> - <X>^2 - <Y>^2.
double variance_sum_at_state(const HermitianOperator& x, const HermitianOperator& y,
                             const DensityState& rho);
double variance(const HermitianOperator& x, const DensityState& rho);

/// G G^dagger / Tr for a seeded complex Gaussian G.
DensityState random_state(int dim, std::uint64_t seed);
/// (G + G^dagger) / 2 for a seeded complex Gaussian G.
HermitianOperator random_hermitian(int dim, std::uint64_t seed);
/// Haar-like random pure state (normalized complex Gaussian vector).
CVector random_pure_vector(int dim, std::uint64_t seed);

}  // namespace varbound
