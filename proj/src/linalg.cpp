#include "varbound/linalg.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace varbound {

namespace {

CMatrix hermitian_average(const CMatrix& m) {
  CMatrix h = 0.5 * (m + m.adjoint());
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return h;
}

CMatrix gaussian_matrix(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

HermitianOperator::HermitianOperator(const CMatrix& entries) {
  if (entries.rows() < 1 || entries.rows() != entries.cols())
    throw DimensionMismatch("Hermitian operator must be a non-empty square matrix");
  double worst = -1.0;
  int wi = 0;
  int wj = 0;
  for (Eigen::Index i = 0; i < entries.rows(); ++i)
    for (Eigen::Index j = i; j < entries.cols(); ++j) {
      const double dev = std::abs(entries(i, j) - std::conj(entries(j, i)));
      if (dev > worst) {
        worst = dev;
        wi = static_cast<int>(i);
        wj = static_cast<int>(j);
      }
    }
  if (worst > kHermitianTolerance) {
    std::ostringstream os;
    os << "matrix is not Hermitian: entry (" << wi << "," << wj << ") differs from the conjugate of ("
       << wj << "," << wi << ") by " << worst;
    throw NotHermitian(os.str(), wi, wj, worst);
  }
  m_ = hermitian_average(entries);
}

HermitianOperator HermitianOperator::hermitian_part(const CMatrix& m) {
  return HermitianOperator(hermitian_average(m), Trusted{});
}

HermitianOperator HermitianOperator::identity(int dim) {
  return HermitianOperator(CMatrix::Identity(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::zero(int dim) {
  return HermitianOperator(CMatrix::Zero(dim, dim), Trusted{});
}

HermitianOperator HermitianOperator::diagonal(const Eigen::VectorXd& diag) {
  CMatrix m = CMatrix::Zero(diag.size(), diag.size());
  for (Eigen::Index i = 0; i < diag.size(); ++i) m(i, i) = diag(i);
  return HermitianOperator(std::move(m), Trusted{});
}

HermitianOperator HermitianOperator::square() const { return hermitian_part(m_ * m_); }

double HermitianOperator::norm() const {
  const Eigen::VectorXd ev = eigenvalues(*this);
  return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

HermitianOperator operator+(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator dimensions differ");
  return HermitianOperator(a.m_ + b.m_, HermitianOperator::Trusted{});
}

HermitianOperator operator-(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator dimensions differ");
  return HermitianOperator(a.m_ - b.m_, HermitianOperator::Trusted{});
}

HermitianOperator operator*(double s, const HermitianOperator& a) {
  return HermitianOperator(s * a.m_, HermitianOperator::Trusted{});
}

HermitianOperator HermitianOperator::shifted(double c) const {
  CMatrix m = m_;
  m.diagonal().array() += c;
  return HermitianOperator(std::move(m), Trusted{});
}

Spectrum eig(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("Hermitian eigensolver did not converge");
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXd eigenvalues(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw ConvergenceError("Hermitian eigensolver did not converge");
  return solver.eigenvalues();
}

DensityState::DensityState(const CMatrix& rho) {
  if (rho.rows() < 1 || rho.rows() != rho.cols())
    throw DimensionMismatch("density matrix must be a non-empty square matrix");
  const HermitianOperator h(rho);
  const double tr = h.trace();
  if (std::abs(tr - 1.0) > 1e-12) throw std::invalid_argument("density matrix trace differs from 1");
  if (eigenvalues(h)(0) < -1e-12) throw std::invalid_argument("density matrix is not positive semidefinite");
  rho_ = h.matrix();
}

DensityState DensityState::pure(const CVector& psi) {
  const double n = psi.squaredNorm();
  if (!(n > 0.0)) throw std::invalid_argument("pure state vector is zero");
  CMatrix m = psi * psi.adjoint() / n;
  return DensityState(hermitian_average(m), Trusted{});
}

DensityState DensityState::maximally_mixed(int dim) {
  return DensityState(CMatrix::Identity(dim, dim) / static_cast<double>(dim), Trusted{});
}

AngularMomentum angular_momentum(int two_j) {
  if (two_j < 1) throw std::invalid_argument("angular momentum requires 2j >= 1");
  const int dim = two_j + 1;
  const double j = 0.5 * two_j;
  CMatrix jp = CMatrix::Zero(dim, dim);  // raising operator J+
  Eigen::VectorXd jz(dim);
  for (int k = 0; k < dim; ++k) {
    const double m = j - k;
    jz(k) = m;
    if (k > 0) {
      // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>, and |m+1> sits at index k-1.
      jp(k - 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
  }
  const CMatrix jm = jp.adjoint();
  const CMatrix jx = 0.5 * (jp + jm);
  const CMatrix jy = (jp - jm) / Complex(0.0, 2.0);
  return AngularMomentum{HermitianOperator::hermitian_part(jx), HermitianOperator::hermitian_part(jy),
                         HermitianOperator::diagonal(jz)};
}

double expectation(const HermitianOperator& f, const DensityState& rho) {
  if (f.dim() != rho.dim()) throw DimensionMismatch("operator and state dimensions differ");
  const Complex t = (rho.matrix() * f.matrix()).trace();
  if (std::abs(t.imag()) > 1e-12 * std::max(1.0, std::abs(t.real())))
    throw std::logic_error("expectation value has a non-negligible imaginary part");
  return t.real();
}

double expectation(const HermitianOperator& f, const CVector& psi) {
  if (f.dim() != psi.size()) throw DimensionMismatch("operator and state dimensions differ");
  return psi.dot(f.matrix() * psi).real();
}

double variance(const HermitianOperator& x, const DensityState& rho) {
  const double m = expectation(x, rho);
  return expectation(x.square(), rho) - m * m;
}

double variance_sum_at_state(const HermitianOperator& x, const HermitianOperator& y,
                             const DensityState& rho) {
  if (x.dim() != y.dim()) throw DimensionMismatch("operator dimensions differ");
  const double mx = expectation(x, rho);
  const double my = expectation(y, rho);
  const double v = expectation(x.square() + y.square(), rho) - mx * mx - my * my;
  if (v < -1e-12 * std::max(1.0, x.norm() * x.norm() + y.norm() * y.norm()))
    throw std::logic_error("negative variance sum");
  return std::max(v, 0.0);
}

DensityState random_state(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  const CMatrix g = gaussian_matrix(dim, seed);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityState(hermitian_average(rho));
}

HermitianOperator random_hermitian(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  return HermitianOperator::hermitian_part(gaussian_matrix(dim, seed));
}

CVector random_pure_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(dim);
  for (int i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v.normalized();
}

}  // namespace varbound
