#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>

#include "coherent.hpp"
#include "qfunction.hpp"
#include "slots.hpp"

namespace macrospin {

/// Explicit, seedable random source. Uniform draws use the top 53 bits of a
/// 64-bit Mersenne twister, so sequences are identical across standard libraries.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

struct LudersOutcome {
  DensityOperator state;
  double probability;
};

/// P rho P / Tr(P rho) for the projector onto one slot.
inline LudersOutcome luders_update(const DensityOperator& rho, const SlotPartition& part, int slot) {
  require_same_spin(rho.spin(), part.spin(), "luders_update");
  if (slot < 0 || slot >= part.size()) throw std::invalid_argument("luders_update: slot index out of range");
  const Slot& s = part.slot(slot);
  double p = 0.0;
  for (int k = s.k_lo; k <= s.k_hi; ++k) p += rho.matrix()(k, k).real();
  if (!(p > 1e-14))
    throw std::domain_error("luders_update: slot " + std::to_string(slot) + " has zero probability");
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  const int w = s.width();
  out.block(s.k_lo, s.k_lo, w, w) = rho.matrix().block(s.k_lo, s.k_lo, w, w) / p;
  return {DensityOperator(rho.spin(), std::move(out)), p};
}

/// Entries of rho that couple different slots (rho minus its slot-block-diagonal part).
inline CMatrix cross_slot_part(const DensityOperator& rho, const SlotPartition& part) {
  require_same_spin(rho.spin(), part.spin(), "cross_slot_part");
  CMatrix d = rho.matrix();
  for (const Slot& s : part.slots()) d.block(s.k_lo, s.k_lo, s.width(), s.width()).setZero();
  return d;
}

/// sum over slots of P rho P: removes coherences across slot boundaries.
inline DensityOperator nonselective_update(const DensityOperator& rho, const SlotPartition& part) {
  return DensityOperator(rho.spin(), rho.matrix() - cross_slot_part(rho, part));
}

/// sup over the grid of |Q_rho - sum_slot prob(slot) Q_{rho_slot}|.
///
/// The post-measurement mixture is assembled from the Luders branches and the
/// difference operator rho - mixture is mapped directly, so residuals far below
/// the size of Q itself (e.g. 4^{-j} for cat states) are resolved.
inline double mixture_residual(const DensityOperator& rho, const SlotPartition& part, const SphereGrid& grid) {
  CMatrix mixture = CMatrix::Zero(rho.dim(), rho.dim());
  const SlotDistribution probs = exact_slot_probs(rho, part);
  for (int s = 0; s < part.size(); ++s) {
    if (!(probs[s] > 1e-14)) continue;
    const LudersOutcome branch = luders_update(rho, part, s);
    mixture += branch.probability * branch.state.matrix();
  }
  const CMatrix diff = rho.matrix() - mixture;
  const auto q = coherent_expectation_values(rho.spin(), diff, grid);
  double sup = 0.0;
  for (double v : q) sup = std::max(sup, std::abs(v));
  return sup;
}

/// Q_rho - Q_{nonselective(rho)} on the grid.
inline SphereFunction measurement_disturbance(const DensityOperator& rho, const SlotPartition& part, GridPtr grid) {
  auto values = coherent_expectation_values(rho.spin(), cross_slot_part(rho, part), *grid);
  return SphereFunction(std::move(grid), std::move(values), rho.spin());
}

/// Distance between the Q-functions before and after a non-selective slot measurement.
inline double invasiveness(const DensityOperator& rho, const SlotPartition& part, GridPtr grid, Metric metric) {
  return sphere_norm(measurement_disturbance(rho, part, std::move(grid)), metric);
}

/// log of sup |Q_cat - Q_mix| = (2j+1)/(4 pi) 4^{-j}.
inline double log_cat_gap(SpinJ j) {
  return std::log(j.twice() + 1.0) - std::log(4.0 * std::numbers::pi) - j.twice() * std::numbers::ln2;
}

inline double cat_gap(SpinJ j) { return std::exp(log_cat_gap(j)); }

/// Cat state and its dephased mixture (|j><j| + |-j><-j|)/2.
inline DensityOperator cat_mixture(SpinJ j) {
  if (j.twice() < 1) throw std::invalid_argument("cat_mixture: needs j >= 1/2");
  CMatrix m = CMatrix::Zero(j.dim(), j.dim());
  m(0, 0) = 0.5;
  m(j.twice(), j.twice()) = 0.5;
  return DensityOperator(j, std::move(m));
}

struct SampledSlot {
  int slot;
  DensityOperator state;
};

/// Draws a slot with its Born probability and returns the Luders-updated state.
inline SampledSlot sample_slot(const DensityOperator& rho, const SlotPartition& part, RandomStream& rng) {
  const SlotDistribution probs = exact_slot_probs(rho, part);
  const double u = rng.uniform();
  double acc = 0.0;
  int chosen = -1;
  int last_nonzero = -1;
  for (int s = 0; s < part.size(); ++s) {
    if (probs[s] > 1e-14) last_nonzero = s;
    acc += probs[s];
    if (u < acc && probs[s] > 1e-14) {
      chosen = s;
      break;
    }
  }
  if (chosen < 0) chosen = last_nonzero;  // u beyond the rounded cumulative total
  LudersOutcome out = luders_update(rho, part, chosen);
  return {chosen, std::move(out.state)};
}

}  // namespace macrospin
