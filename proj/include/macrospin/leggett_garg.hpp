#pragma once

// Leggett-Garg combination K = C12 + C23 - C13 for the dichotomized slot
// observable under precession. Each two-time correlator is its own run with
// measurements only at its two times; probabilities are enumerated exactly over
// slot outcomes with Luders updates, so no sampling noise enters.

#include <vector>

#include "dynamics.hpp"

namespace macrospin {

struct LgResult {
  double omega_tau = 0.0;
  double c12 = 0.0;
  double c23 = 0.0;
  double c13 = 0.0;
  double K = 0.0;
};

/// +1 for slots whose midpoint m is >= 0, -1 otherwise.
inline int dichotomic_sign(const SlotPartition& part, int slot) { return part.midpoint(slot) >= 0.0 ? 1 : -1; }

namespace detail {

/// Two-time correlator of the dichotomic observable: measure at the start, evolve, measure again.
inline double two_time_correlator(const CMatrix& rho_first, const CMatrix& u, const SlotPartition& part) {
  double c = 0.0;
  for (int a = 0; a < part.size(); ++a) {
    const Slot& sa = part.slot(a);
    const int w = sa.width();
    // P_a rho P_a evolved: only columns/rows of slot a are non-zero.
    const CMatrix u_cols = u.middleCols(sa.k_lo, w);
    const CMatrix branch = u_cols * rho_first.block(sa.k_lo, sa.k_lo, w, w) * u_cols.adjoint();
    for (int b = 0; b < part.size(); ++b) {
      const Slot& sb = part.slot(b);
      double p = 0.0;
      for (int k = sb.k_lo; k <= sb.k_hi; ++k) p += branch(k, k).real();
      c += dichotomic_sign(part, a) * dichotomic_sign(part, b) * p;
    }
  }
  return c;
}

}  // namespace detail

/// Measurements at t = 0, tau, 2 tau starting from rho0.
inline LgResult lg_correlator(const DensityOperator& rho0, const PrecessionSpec& spec, double tau,
                              const SlotPartition& part) {
  require_same_spin(rho0.spin(), part.spin(), "lg_correlator");
  if (part.size() < 2) throw std::invalid_argument("lg_correlator: partition needs at least two slots");
  const SpinJ j = rho0.spin();
  const Rotation u1 = spec.propagator(j, tau);
  const Rotation u2 = spec.propagator(j, 2.0 * tau);
  const CMatrix rho_tau = u1.matrix() * rho0.matrix() * u1.matrix().adjoint();
  LgResult r;
  r.omega_tau = spec.omega * tau;
  r.c12 = detail::two_time_correlator(rho0.matrix(), u1.matrix(), part);
  r.c23 = detail::two_time_correlator(rho_tau, u1.matrix(), part);
  r.c13 = detail::two_time_correlator(rho0.matrix(), u2.matrix(), part);
  r.K = r.c12 + r.c23 - r.c13;
  return r;
}

inline LgResult lg_correlator(SpinJ j, const PrecessionSpec& spec, double tau, const SlotPartition& part) {
  return lg_correlator(DensityOperator::maximally_mixed(j), spec, tau, part);
}

/// K over omega*tau = from + i (to - from)/(count - 1).
inline std::vector<LgResult> lg_sweep(const DensityOperator& rho0, const PrecessionSpec& spec,
                                      const SlotPartition& part, double from, double to, int count) {
  if (count < 1) throw std::invalid_argument("lg_sweep: count must be >= 1");
  std::vector<LgResult> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double wt = count == 1 ? from : from + i * (to - from) / (count - 1);
    out.push_back(lg_correlator(rho0, spec, wt / spec.omega, part));
  }
  return out;
}

}  // namespace macrospin
