#pragma once

// Coarse-grained J_z measurements: slots of delta_m adjacent outcomes, their
// exact Born probabilities, and the Q-function approximation obtained by
// integrating Q over the polar band each slot projects onto.

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "qfunction.hpp"
#include "state.hpp"

namespace macrospin {

/// Inclusive range of basis indices k (m = k - j).
struct Slot {
  int k_lo = 0;
  int k_hi = 0;
  int width() const { return k_hi - k_lo + 1; }
  bool contains(int k) const { return k >= k_lo && k <= k_hi; }
};

class SlotPartition {
 public:
  SpinJ spin() const { return j_; }
  int delta_m() const { return delta_m_; }
  int size() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  const Slot& slot(int s) const { return slots_[static_cast<std::size_t>(s)]; }
  int slot_of(int k) const { return k / delta_m_; }

  double m_lo(int s) const { return j_.m_at(slot(s).k_lo); }
  double m_hi(int s) const { return j_.m_at(slot(s).k_hi); }
  double midpoint(int s) const { return 0.5 * (m_lo(s) + m_hi(s)); }

  friend SlotPartition make_partition(SpinJ j, int delta_m);

 private:
  SpinJ j_;
  int delta_m_ = 1;
  std::vector<Slot> slots_;
};

/// Blocks of delta_m outcomes from m = -j upward; a short final block is kept.
inline SlotPartition make_partition(SpinJ j, int delta_m) {
  if (delta_m < 1 || delta_m > j.dim())
    throw std::invalid_argument("make_partition: delta_m = " + std::to_string(delta_m) + " outside [1, 2j+1 = " +
                                std::to_string(j.dim()) + "]");
  SlotPartition p;
  p.j_ = j;
  p.delta_m_ = delta_m;
  for (int lo = 0; lo < j.dim(); lo += delta_m) p.slots_.push_back({lo, std::min(lo + delta_m - 1, j.twice())});
  return p;
}

/// Polar band of one slot. Edges are kept as integer numerators over 2j+1 so that
/// neighbouring bands share bit-identical edges and the tiling of [-1, 1] is exact.
struct SlotBand {
  int slot = 0;
  int numerator_lo = 0;
  int numerator_hi = 0;
  int denominator = 1;

  double cos_lo() const { return double(numerator_lo) / denominator; }
  double cos_hi() const { return double(numerator_hi) / denominator; }
  double width() const { return double(numerator_hi - numerator_lo) / denominator; }
  /// Fraction of the sphere's solid angle inside the band.
  double solid_angle_fraction() const { return 0.5 * width(); }
};

/// cos(theta) edges (m_lo - 1/2)/(j + 1/2) and (m_hi + 1/2)/(j + 1/2).
inline std::vector<SlotBand> slot_bands(const SlotPartition& part) {
  const int n = part.spin().twice();
  std::vector<SlotBand> out;
  out.reserve(part.slots().size());
  for (int s = 0; s < part.size(); ++s) {
    const Slot& sl = part.slot(s);
    out.push_back({s, 2 * sl.k_lo - n - 1, 2 * sl.k_hi - n + 1, n + 1});
  }
  return out;
}

class SlotDistribution {
 public:
  SlotDistribution(SlotPartition partition, std::vector<double> probabilities)
      : partition_(std::move(partition)), p_(std::move(probabilities)) {
    if (p_.size() != partition_.slots().size()) throw DimensionMismatch("SlotDistribution: wrong length");
  }
  const SlotPartition& partition() const { return partition_; }
  const std::vector<double>& probabilities() const { return p_; }
  double operator[](int s) const { return p_[static_cast<std::size_t>(s)]; }
  double total() const { return std::accumulate(p_.begin(), p_.end(), 0.0); }

  double max_abs_difference(const SlotDistribution& o) const {
    if (o.p_.size() != p_.size()) throw DimensionMismatch("SlotDistribution: partitions differ");
    double m = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) m = std::max(m, std::abs(p_[i] - o.p_[i]));
    return m;
  }

 private:
  SlotPartition partition_;
  std::vector<double> p_;
};

namespace detail {

inline SlotDistribution checked_distribution(const SlotPartition& part, std::vector<double> p, const char* where) {
  double total = 0.0;
  for (double v : p) {
    if (v < -1e-12) throw InvariantViolation(std::string(where) + ": negative slot probability");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw InvariantViolation(std::string(where) + ": slot probabilities sum to " + std::to_string(total));
  return {part, std::move(p)};
}

}  // namespace detail

/// Tr(P_slot rho) for every slot.
inline SlotDistribution exact_slot_probs(const DensityOperator& rho, const SlotPartition& part) {
  require_same_spin(rho.spin(), part.spin(), "exact_slot_probs");
  std::vector<double> p(part.slots().size(), 0.0);
  for (int k = 0; k < rho.dim(); ++k) p[static_cast<std::size_t>(part.slot_of(k))] += rho.matrix()(k, k).real();
  return detail::checked_distribution(part, std::move(p), "exact_slot_probs");
}

inline SlotDistribution exact_slot_probs(const PureState& psi, const SlotPartition& part) {
  require_same_spin(psi.spin(), part.spin(), "exact_slot_probs");
  std::vector<double> p(part.slots().size(), 0.0);
  for (int k = 0; k < psi.dim(); ++k) p[static_cast<std::size_t>(part.slot_of(k))] += std::norm(psi.amplitude(k));
  return detail::checked_distribution(part, std::move(p), "exact_slot_probs");
}

struct ApproxSlotProbs {
  SlotDistribution distribution;
  /// Band integrals before renormalization; equals the integral of Q.
  double raw_total = 1.0;
  double normalization_defect() const { return raw_total - 1.0; }
};

/// Integral of Q over each slot's polar band, renormalized to sum to one.
///
/// Q of a spin-j state is band-limited at degree 2j, so its azimuthal mean is a
/// polynomial of degree <= 2j in x = cos(theta). The Legendre coefficients of
/// that polynomial are recovered exactly from the Gauss-Legendre rows, and each
/// band integral follows from antiderivatives of P_L, with no error from band
/// edges falling between nodes.
inline ApproxSlotProbs approx_slot_probs_via_q(const QMap& q, const SlotPartition& part,
                                               const std::vector<SlotBand>& bands) {
  const SphereGrid& g = q.grid();
  const int lb = q.spin().twice();
  require_same_spin(q.spin(), part.spin(), "approx_slot_probs_via_q");
  if (g.n_theta() < lb + 1 || g.n_phi() < lb + 1)
    throw std::invalid_argument("approx_slot_probs_via_q: grid is not exact at degree 2j");
  if (bands.size() != part.slots().size()) throw DimensionMismatch("approx_slot_probs_via_q: band count");
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const bool first_ok = (b == 0) ? bands[b].numerator_lo == -bands[b].denominator
                                   : bands[b].numerator_lo == bands[b - 1].numerator_hi;
    if (!first_ok || bands[b].numerator_hi <= bands[b].numerator_lo)
      throw std::invalid_argument("approx_slot_probs_via_q: bands do not tile [-1, 1]");
  }
  if (bands.back().numerator_hi != bands.back().denominator)
    throw std::invalid_argument("approx_slot_probs_via_q: bands do not tile [-1, 1]");

  const std::vector<double> f = q.row_means();
  // a_L = (2L+1)/2 sum_i w_i f(x_i) P_L(x_i)
  std::vector<double> a(static_cast<std::size_t>(lb) + 1, 0.0);
  for (int r = 0; r < g.n_theta(); ++r) {
    const double x = g.cos_theta(r);
    const double wf = g.row_weight(r) * f[static_cast<std::size_t>(r)];
    double p0 = 1.0;
    double p1 = x;
    a[0] += wf;
    if (lb >= 1) a[1] += wf * x;
    for (int L = 2; L <= lb; ++L) {
      const double p2 = ((2.0 * L - 1.0) * x * p1 - (L - 1.0) * p0) / L;
      a[static_cast<std::size_t>(L)] += wf * p2;
      p0 = p1;
      p1 = p2;
    }
  }
  for (int L = 0; L <= lb; ++L) a[static_cast<std::size_t>(L)] *= 0.5 * (2.0 * L + 1.0);

  // F(x) = sum_L a_L \int_{-1}^{x} P_L, with \int_{-1}^{x} P_L = (P_{L+1} - P_{L-1})/(2L+1) for L >= 1.
  auto antiderivative = [&](double x) {
    std::vector<double> P(static_cast<std::size_t>(lb) + 2);
    P[0] = 1.0;
    P[1] = x;
    for (int L = 2; L <= lb + 1; ++L)
      P[static_cast<std::size_t>(L)] = ((2.0 * L - 1.0) * x * P[static_cast<std::size_t>(L - 1)] -
                                        (L - 1.0) * P[static_cast<std::size_t>(L - 2)]) / L;
    double s = a[0] * (x + 1.0);
    for (int L = 1; L <= lb; ++L)
      s += a[static_cast<std::size_t>(L)] * (P[static_cast<std::size_t>(L + 1)] - P[static_cast<std::size_t>(L - 1)]) /
           (2.0 * L + 1.0);
    return s;
  };

  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> raw(bands.size());
  double prev = 0.0;  // F(-1) = 0
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const double hi = (b + 1 == bands.size()) ? antiderivative(1.0) : antiderivative(bands[b].cos_hi());
    raw[b] = two_pi * (hi - prev);
    prev = hi;
  }
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (!(total > 0)) throw InvariantViolation("approx_slot_probs_via_q: Q integrates to " + std::to_string(total));
  for (double& v : raw) v /= total;
  return {SlotDistribution(part, std::move(raw)), total};
}

inline ApproxSlotProbs approx_slot_probs_via_q(const QMap& q, const SlotPartition& part) {
  return approx_slot_probs_via_q(q, part, slot_bands(part));
}

}  // namespace macrospin
