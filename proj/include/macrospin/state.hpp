#pragma once

#include <complex>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "spin.hpp"

namespace macrospin {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace detail {

inline double hermiticity_defect(const CMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

inline void require_square(SpinJ j, const CMatrix& m, const char* where) {
  if (m.rows() != j.dim() || m.cols() != j.dim())
    throw DimensionMismatch(std::string(where) + ": matrix is not (2j+1)x(2j+1)");
}

}  // namespace detail

/// Normalized spin-j vector in the ordered basis m = -j..j.
class PureState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  PureState(SpinJ j, CVector amplitudes) : j_(j), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != j_.dim()) throw DimensionMismatch("PureState: amplitude count != 2j+1");
    const double n2 = amplitudes_.squaredNorm();
    if (!(std::abs(n2 - 1.0) <= kNormTolerance))
      throw InvariantViolation("PureState: squared norm " + std::to_string(n2) + " is not 1");
  }

  /// Rescales to unit norm; throws on the zero vector.
  static PureState normalized(SpinJ j, CVector amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0)) throw std::invalid_argument("PureState: cannot normalize the zero vector");
    amplitudes /= n;
    return PureState(j, std::move(amplitudes));
  }

  /// J_z eigenstate |m>.
  static PureState dicke(SpinJ j, double m) {
    const double k = m + j.value();
    const int ki = static_cast<int>(std::lround(k));
    if (std::abs(k - ki) > 1e-9 || ki < 0 || ki > j.twice())
      throw std::invalid_argument("PureState::dicke: m out of range");
    CVector v = CVector::Zero(j.dim());
    v(ki) = 1.0;
    return PureState(j, std::move(v));
  }

  SpinJ spin() const { return j_; }
  int dim() const { return j_.dim(); }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(int k) const { return amplitudes_(k); }

 private:
  SpinJ j_;
  CVector amplitudes_;
};

/// Spin-j density operator. Hermiticity and unit trace are checked on construction;
/// positivity costs an eigensolve and is checked on demand.
class DensityOperator {
 public:
  static constexpr double kTolerance = 1e-12;
  static constexpr double kPositivityTolerance = 1e-10;

  DensityOperator(SpinJ j, CMatrix matrix, double tolerance = kTolerance)
      : j_(j), matrix_(std::move(matrix)) {
    detail::require_square(j_, matrix_, "DensityOperator");
    const double herm = detail::hermiticity_defect(matrix_);
    if (!(herm <= tolerance))
      throw InvariantViolation("DensityOperator: not Hermitian (defect " + std::to_string(herm) + ")");
    const Complex tr = matrix_.trace();
    if (!(std::abs(tr - Complex(1.0, 0.0)) <= tolerance))
      throw InvariantViolation("DensityOperator: trace " + std::to_string(tr.real()) + " is not 1");
  }

  static DensityOperator from_pure(const PureState& psi) {
    return DensityOperator(psi.spin(), psi.amplitudes() * psi.amplitudes().adjoint());
  }

  static DensityOperator maximally_mixed(SpinJ j) {
    return DensityOperator(j, CMatrix::Identity(j.dim(), j.dim()) / double(j.dim()));
  }

  SpinJ spin() const { return j_; }
  int dim() const { return j_.dim(); }
  const CMatrix& matrix() const { return matrix_; }

  double min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(matrix_, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
  }

  bool is_positive(double tolerance = kPositivityTolerance) const {
    return min_eigenvalue() >= -tolerance;
  }

  double purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  SpinJ j_;
  CMatrix matrix_;
};

/// Dense operator on the spin-j space. Observables are Hermitian; ladder operators are not.
class SpinOperator {
 public:
  SpinOperator(SpinJ j, CMatrix matrix) : j_(j), matrix_(std::move(matrix)) {
    detail::require_square(j_, matrix_, "SpinOperator");
  }

  SpinJ spin() const { return j_; }
  const CMatrix& matrix() const { return matrix_; }
  bool is_hermitian(double tolerance = 1e-12) const {
    return detail::hermiticity_defect(matrix_) <= tolerance;
  }

  CVector apply(const CVector& v) const { return matrix_ * v; }

 private:
  SpinJ j_;
  CMatrix matrix_;
};

/// <a|b>.
inline Complex overlap(const PureState& a, const PureState& b) {
  require_same_spin(a.spin(), b.spin(), "overlap");
  return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2; the phase-insensitive comparison used throughout.
inline double fidelity(const PureState& a, const PureState& b) { return std::norm(overlap(a, b)); }

inline double trace_distance(const CMatrix& a, const CMatrix& b) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double trace_distance(const DensityOperator& a, const DensityOperator& b) {
  require_same_spin(a.spin(), b.spin(), "trace_distance");
  return trace_distance(a.matrix(), b.matrix());
}

/// Tr(rho op) for a Hermitian op.
inline double expectation(const DensityOperator& rho, const SpinOperator& op) {
  require_same_spin(rho.spin(), op.spin(), "expectation");
  const double scale = std::max(1.0, op.matrix().cwiseAbs().maxCoeff());
  if (!op.is_hermitian(1e-12 * scale)) throw std::invalid_argument("expectation: operator is not Hermitian");
  const Complex v = rho.matrix().cwiseProduct(op.matrix().transpose()).sum();
  if (std::abs(v.imag()) > 1e-10 * scale)
    throw InvariantViolation("expectation: imaginary part " + std::to_string(v.imag()));
  return v.real();
}

inline double expectation(const PureState& psi, const SpinOperator& op) {
  require_same_spin(psi.spin(), op.spin(), "expectation");
  const double scale = std::max(1.0, op.matrix().cwiseAbs().maxCoeff());
  if (!op.is_hermitian(1e-12 * scale)) throw std::invalid_argument("expectation: operator is not Hermitian");
  const Complex v = psi.amplitudes().dot(op.matrix() * psi.amplitudes());
  if (std::abs(v.imag()) > 1e-10 * scale)
    throw InvariantViolation("expectation: imaginary part " + std::to_string(v.imag()));
  return v.real();
}

}  // namespace macrospin
