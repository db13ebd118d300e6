#pragma once

#include <cmath>

#include "state.hpp"

namespace macrospin {

namespace detail {

/// sqrt(j(j+1) - m(m+1)) for m at basis index k, written in terms of 2j:
/// j(j+1) - m(m+1) = (j - m)(j + m + 1) = (n - k)(k + 1) with n = 2j.
inline double raising_coefficient(int n, int k) { return std::sqrt(double(n - k) * double(k + 1)); }

}  // namespace detail

inline SpinOperator jz_operator(SpinJ j) {
  CMatrix m = CMatrix::Zero(j.dim(), j.dim());
  for (int k = 0; k < j.dim(); ++k) m(k, k) = j.m_at(k);
  return {j, std::move(m)};
}

/// J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>.
inline SpinOperator j_plus(SpinJ j) {
  CMatrix m = CMatrix::Zero(j.dim(), j.dim());
  for (int k = 0; k + 1 < j.dim(); ++k) m(k + 1, k) = detail::raising_coefficient(j.twice(), k);
  return {j, std::move(m)};
}

inline SpinOperator j_minus(SpinJ j) { return {j, j_plus(j).matrix().adjoint()}; }

inline SpinOperator jx_operator(SpinJ j) {
  const CMatrix p = j_plus(j).matrix();
  return {j, 0.5 * (p + p.adjoint())};
}

inline SpinOperator jy_operator(SpinJ j) {
  const CMatrix p = j_plus(j).matrix();
  return {j, Complex(0.0, -0.5) * (p - p.adjoint())};
}

/// n . J for the unit vector n of dir.
inline SpinOperator j_omega_operator(SpinJ j, const Direction& dir) {
  const Vec3 n = dir.unit_vector();
  const CMatrix p = j_plus(j).matrix();
  CMatrix m = 0.5 * (p + p.adjoint()) * n.x() + Complex(0.0, -0.5) * (p - p.adjoint()) * n.y();
  for (int k = 0; k < j.dim(); ++k) m(k, k) += n.z() * j.m_at(k);
  return {j, std::move(m)};
}

/// (<Jx>, <Jy>, <Jz>) in O(2j) using the band structure of the spin matrices.
inline Vec3 spin_expectation(const DensityOperator& rho) {
  const int n = rho.spin().twice();
  const CMatrix& r = rho.matrix();
  Complex jp = 0.0;  // Tr(rho J+) = <Jx> + i<Jy>
  double jz = 0.0;
  for (int k = 0; k <= n; ++k) {
    jz += rho.spin().m_at(k) * r(k, k).real();
    if (k < n) jp += r(k, k + 1) * detail::raising_coefficient(n, k);
  }
  return {jp.real(), jp.imag(), jz};
}

inline Vec3 spin_expectation(const PureState& psi) {
  const int n = psi.spin().twice();
  const CVector& a = psi.amplitudes();
  Complex jp = 0.0;
  double jz = 0.0;
  for (int k = 0; k <= n; ++k) {
    jz += psi.spin().m_at(k) * std::norm(a(k));
    if (k < n) jp += std::conj(a(k + 1)) * a(k) * detail::raising_coefficient(n, k);
  }
  return {jp.real(), jp.imag(), jz};
}

}  // namespace macrospin
