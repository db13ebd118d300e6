#pragma once

// Spin-j rotation matrices.
//
// Rotation convention (used everywhere in the library):
//   * Active rotations, U(R) = exp(-i angle n.J).
//   * Euler angles are z-y-z: U(alpha, beta, gamma) = e^{-i alpha Jz} e^{-i beta Jy} e^{-i gamma Jz}.
//   * The rotation taking +z to Direction(theta, phi) is Euler (phi, theta, 0).
//
// Matrices are built by the symmetric-power (Risbo) recursion: the spin-(j+1/2)
// matrix follows from the spin-j one by coupling one more spin-1/2, with every
// coefficient bounded by one. The recursion is stable for large j, unlike the
// explicit Wigner sum, and needs only the 2x2 SU(2) matrix, so the half-integer
// sign of a 2pi rotation comes out right.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "state.hpp"

namespace macrospin {

/// SU(2) element [[a, -conj(b)], [b, conj(a)]] in the (m=+1/2, m=-1/2) basis.
struct Su2 {
  Complex a{1.0, 0.0};
  Complex b{0.0, 0.0};

  /// exp(-i angle n.sigma/2) for unit axis n.
  static Su2 axis_angle(const Vec3& axis, double angle) {
    const Vec3 n = axis.normalized();
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    return {Complex(c, -n.z() * s), Complex(n.y() * s, -n.x() * s)};
  }

  static Su2 euler_zyz(double alpha, double beta, double gamma) {
    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);
    return {std::polar(c, -0.5 * (alpha + gamma)), std::polar(s, 0.5 * (alpha - gamma))};
  }

  Complex up_up() const { return a; }
  Complex up_down() const { return -std::conj(b); }
  Complex down_up() const { return b; }
  Complex down_down() const { return std::conj(a); }

  Su2 operator*(const Su2& o) const {
    // [[a, -b*], [b, a*]] [[c, -d*], [d, c*]]
    return {a * o.a - std::conj(b) * o.b, b * o.a + std::conj(a) * o.b};
  }

  /// The SO(3) matrix this element induces on vectors.
  Eigen::Matrix3d rotation_matrix() const {
    const double w = a.real();
    const double x = -b.imag();
    const double y = b.real();
    const double z = -a.imag();
    return Eigen::Quaterniond(w, x, y, z).toRotationMatrix();
  }
};

namespace detail {

/// Representation matrix of the 2x2 matrix [[uu, ud], [du, dd]] on the symmetric
/// subspace of 2j spins-1/2, indexed by the number of down spins (0 = m=+j).
template <class Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> symmetric_power(int twice_j, Scalar uu, Scalar ud,
                                                                        Scalar du, Scalar dd) {
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat cur = Mat::Constant(1, 1, Scalar(1));
  std::vector<double> up_w(static_cast<std::size_t>(twice_j) + 2);
  std::vector<double> dn_w(static_cast<std::size_t>(twice_j) + 2);
  for (int n = 0; n < twice_j; ++n) {
    const int size = n + 2;
    // |n+1, i> = sqrt((n+1-i)/(n+1)) |n, i>|up> + sqrt(i/(n+1)) |n, i-1>|down>
    const double inv = 1.0 / double(n + 1);
    for (int i = 0; i < size; ++i) {
      up_w[static_cast<std::size_t>(i)] = std::sqrt(double(n + 1 - i) * inv);
      dn_w[static_cast<std::size_t>(i)] = std::sqrt(double(i) * inv);
    }
    Mat next(size, size);
    for (int k = 0; k < size; ++k) {
      const double uk = up_w[static_cast<std::size_t>(k)];
      const double dk = dn_w[static_cast<std::size_t>(k)];
      for (int i = 0; i < size; ++i) {
        const double ui = up_w[static_cast<std::size_t>(i)];
        const double di = dn_w[static_cast<std::size_t>(i)];
        Scalar v(0);
        if (i <= n && k <= n) v += (ui * uk) * cur(i, k) * uu;
        if (i <= n && k >= 1) v += (ui * dk) * cur(i, k - 1) * ud;
        if (i >= 1 && k <= n) v += (di * uk) * cur(i - 1, k) * du;
        if (i >= 1 && k >= 1) v += (di * dk) * cur(i - 1, k - 1) * dd;
        next(i, k) = v;
      }
    }
    cur = std::move(next);
  }
  // Down-spin count i corresponds to basis index 2j - i.
  return cur.reverse();
}

}  // namespace detail

/// Wigner small-d matrix d^j_{m'm}(beta) = <m'|exp(-i beta Jy)|m>, basis order m = -j..j.
inline Eigen::MatrixXd wigner_d(SpinJ j, double beta) {
  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  return detail::symmetric_power<double>(j.twice(), c, -s, s, c);
}

/// Full representation matrix D^j(u) of an SU(2) element, basis order m = -j..j.
inline CMatrix wigner_matrix(SpinJ j, const Su2& u) {
  return detail::symmetric_power<Complex>(j.twice(), u.up_up(), u.up_down(), u.down_up(), u.down_down());
}

/// A spin-j rotation operator, materialized once and applied to many states.
class Rotation {
 public:
  Rotation(SpinJ j, const Su2& u) : j_(j), u_(u), matrix_(wigner_matrix(j, u)) {}

  static Rotation axis_angle(SpinJ j, const Vec3& axis, double angle) {
    return {j, Su2::axis_angle(axis, angle)};
  }

  SpinJ spin() const { return j_; }
  const Su2& element() const { return u_; }
  const CMatrix& matrix() const { return matrix_; }

  PureState apply(const PureState& psi) const {
    require_same_spin(j_, psi.spin(), "Rotation::apply");
    return PureState(j_, matrix_ * psi.amplitudes());
  }

  DensityOperator apply(const DensityOperator& rho) const {
    require_same_spin(j_, rho.spin(), "Rotation::apply");
    CMatrix out = matrix_ * rho.matrix() * matrix_.adjoint();
    out = 0.5 * (out + out.adjoint()).eval();
    return DensityOperator(j_, std::move(out));
  }

 private:
  SpinJ j_;
  Su2 u_;
  CMatrix matrix_;
};

/// Applies the rotation taking +z to dir (Euler z-y-z angles (phi, theta, 0)).
inline PureState rotate(const PureState& psi, const Direction& dir) {
  const SpinJ j = psi.spin();
  const Eigen::MatrixXd d = wigner_d(j, dir.theta);
  CVector out = d.cast<Complex>() * psi.amplitudes();
  for (int k = 0; k < j.dim(); ++k) out(k) *= std::polar(1.0, -j.m_at(k) * dir.phi);
  return PureState(j, std::move(out));
}

}  // namespace macrospin
