#pragma once

#include <numbers>

#include "log_amplitude.hpp"
#include "state.hpp"

namespace macrospin {

/// Spin coherent state |theta, phi>, the +j eigenvector of J along dir.
///
/// Amplitudes are assembled in log form and exponentiated at the end, so the
/// state stays well defined for 2j in the tens of thousands.
inline PureState coherent_state(SpinJ j, const Direction& dir) {
  const auto table = half_log_binomials<double>(j.twice());
  const auto logs = coherent_log_amplitudes<double>(j, dir.theta, dir.phi, table);
  CVector v(j.dim());
  for (int k = 0; k < j.dim(); ++k) v(k) = to_complex(logs[static_cast<std::size_t>(k)]);
  // Rounding in the log-binomials grows like 2j * eps; restore the exact norm.
  return PureState::normalized(j, std::move(v));
}

/// (|m=j> + |m=-j>)/sqrt(2).
inline PureState cat_state(SpinJ j) {
  if (j.twice() < 1) throw std::invalid_argument("cat_state: needs j >= 1/2");
  CVector v = CVector::Zero(j.dim());
  v(0) = std::numbers::sqrt2 / 2;
  v(j.twice()) = std::numbers::sqrt2 / 2;
  return PureState::normalized(j, std::move(v));
}

}  // namespace macrospin
