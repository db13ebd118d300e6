#pragma once

#include <cmath>
#include <algorithm>
#include <numbers>

#include "measurement.hpp"

namespace macrospin {

/// Standard normal draw by Box-Muller on the stream's own uniforms (portable across standard libraries).
inline double standard_normal(RandomStream& rng) {
  double u1 = rng.uniform();
  while (u1 <= 0.0) u1 = rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

/// Haar-random pure state.
inline PureState random_pure_state(SpinJ j, RandomStream& rng) {
  CVector v(j.dim());
  for (int k = 0; k < j.dim(); ++k) v(k) = Complex(standard_normal(rng), standard_normal(rng));
  return PureState::normalized(j, std::move(v));
}

/// G G^dagger / Tr with a (2j+1) x rank Ginibre matrix G. rank <= 0 means full rank.
inline DensityOperator random_density(SpinJ j, RandomStream& rng, int rank = 0) {
  const int r = rank <= 0 ? j.dim() : rank;
  CMatrix g(j.dim(), r);
  for (int c = 0; c < r; ++c)
    for (int k = 0; k < j.dim(); ++k) g(k, c) = Complex(standard_normal(rng), standard_normal(rng));
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(j, std::move(rho));
}

/// Uniform direction on the sphere.
inline Direction random_direction(RandomStream& rng) {
  const double z = 2.0 * rng.uniform() - 1.0;
  return Direction::from_angles(std::acos(std::clamp(z, -1.0, 1.0)), 2.0 * std::numbers::pi * rng.uniform());
}

/// Random state commuting with every slot projector: independent random blocks with random weights.
inline DensityOperator random_block_diagonal(const SlotPartition& part, RandomStream& rng) {
  const SpinJ j = part.spin();
  CMatrix rho = CMatrix::Zero(j.dim(), j.dim());
  for (const Slot& s : part.slots()) {
    const int w = s.width();
    CMatrix g(w, w);
    for (int c = 0; c < w; ++c)
      for (int k = 0; k < w; ++k) g(k, c) = Complex(standard_normal(rng), standard_normal(rng));
    rho.block(s.k_lo, s.k_lo, w, w) = g * g.adjoint();
  }
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(j, std::move(rho));
}

}  // namespace macrospin
