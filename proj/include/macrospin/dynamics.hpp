#pragma once

// Precession under H = omega (axis . J). Evolution is an exact SU(2) rotation by
// omega t about axis, so there is no integrator and no time-step error.

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Geometry>

#include "measurement.hpp"
#include "operators.hpp"
#include "wigner.hpp"

namespace macrospin {

struct PrecessionSpec {
  Vec3 axis{0.0, 0.0, 1.0};
  double omega = 1.0;

  PrecessionSpec() = default;
  PrecessionSpec(const Vec3& a, double w) : axis(a), omega(w) {
    if (std::abs(axis.norm() - 1.0) > 1e-12) throw std::invalid_argument("PrecessionSpec: axis must be a unit vector");
  }

  Rotation propagator(SpinJ j, double t) const { return Rotation::axis_angle(j, axis, omega * t); }
};

inline PureState evolve(const PureState& psi, const PrecessionSpec& spec, double t) {
  return spec.propagator(psi.spin(), t).apply(psi);
}

inline DensityOperator evolve(const DensityOperator& rho, const PrecessionSpec& spec, double t) {
  return spec.propagator(rho.spin(), t).apply(rho);
}

/// Rigid rotation of s0 about spec.axis by omega t: the solution of dS/dt = omega axis x S.
inline std::vector<Vec3> classical_trajectory(const Vec3& s0, const PrecessionSpec& spec,
                                              const std::vector<double>& times) {
  if (std::abs(s0.norm() - 1.0) > 1e-12) throw std::invalid_argument("classical_trajectory: |s0| must be 1");
  std::vector<Vec3> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(Eigen::AngleAxisd(spec.omega * t, spec.axis) * s0);
  return out;
}

enum class MeasurementMode { Unitary, Nonselective, Selective };

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Vec3> quantum_dir;      // <J>/|<J>|; NaN where degenerate
  std::vector<double> quantum_len;    // |<J>|/j
  std::vector<Vec3> classical_dir;
  std::vector<bool> degenerate;       // |<J>| vanished, direction undefined
  std::optional<std::vector<int>> slot_outcomes;

  double angle_error(std::size_t i) const {
    if (degenerate[i]) return std::numeric_limits<double>::quiet_NaN();
    return angle_between(quantum_dir[i], classical_dir[i]);
  }

  /// Largest angle error over non-degenerate points.
  double max_angle_error() const {
    double m = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i)
      if (!degenerate[i]) m = std::max(m, angle_error(i));
    return m;
  }
};

/// Alternates exact precession with a slot measurement at each time after the first.
///
/// The first record is the initial state itself. For i >= 1 the state is evolved
/// from times[i-1] to times[i], then measured (none, non-selective, or selective
/// with a sampled outcome), then recorded. The classical reference starts from the
/// direction of <J> at times[0].
inline TrajectoryRecord quantum_trajectory(const PureState& psi0, const PrecessionSpec& spec,
                                           const std::vector<double>& times, const SlotPartition* part,
                                           MeasurementMode mode, RandomStream* rng = nullptr) {
  if (times.empty()) throw std::invalid_argument("quantum_trajectory: no times");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw std::invalid_argument("quantum_trajectory: times must be increasing");
  if (mode != MeasurementMode::Unitary && part == nullptr)
    throw std::invalid_argument("quantum_trajectory: measurement modes need a slot partition");
  if (mode == MeasurementMode::Selective && rng == nullptr)
    throw std::invalid_argument("quantum_trajectory: selective mode needs a seeded random stream");
  if (part) require_same_spin(psi0.spin(), part->spin(), "quantum_trajectory");

  const SpinJ j = psi0.spin();
  const double jv = j.value();
  TrajectoryRecord rec;
  rec.times = times;
  if (mode == MeasurementMode::Selective) rec.slot_outcomes.emplace();

  DensityOperator rho = DensityOperator::from_pure(psi0);
  auto record = [&](const DensityOperator& r) {
    const Vec3 jvec = spin_expectation(r);
    const double len = jvec.norm();
    const bool deg = !(len > 1e-12 * std::max(1.0, jv));
    rec.quantum_len.push_back(jv > 0 ? len / jv : 0.0);
    rec.degenerate.push_back(deg);
    rec.quantum_dir.push_back(deg ? Vec3::Constant(std::numeric_limits<double>::quiet_NaN()) : Vec3(jvec / len));
  };
  record(rho);
  if (rec.degenerate.front())
    throw std::invalid_argument("quantum_trajectory: <J> vanishes initially, no classical initial condition");
  if (rec.slot_outcomes) rec.slot_outcomes->push_back(-1);

  std::optional<Rotation> step;
  double step_dt = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double dt = times[i] - times[i - 1];
    if (!step || std::abs(dt - step_dt) > 1e-12 * std::abs(dt)) {
      step.emplace(spec.propagator(j, dt));
      step_dt = dt;
    }
    rho = step->apply(rho);
    switch (mode) {
      case MeasurementMode::Unitary:
        break;
      case MeasurementMode::Nonselective:
        rho = nonselective_update(rho, *part);
        break;
      case MeasurementMode::Selective: {
        SampledSlot s = sample_slot(rho, *part, *rng);
        rec.slot_outcomes->push_back(s.slot);
        rho = std::move(s.state);
        break;
      }
    }
    record(rho);
  }
  rec.classical_dir = classical_trajectory(rec.quantum_dir.front(), spec, [&] {
    std::vector<double> rel(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) rel[i] = times[i] - times[0];
    return rel;
  }());
  return rec;
}

/// Evenly spaced times 0, dt, ..., steps*dt.
inline std::vector<double> uniform_times(int steps, double dt) {
  std::vector<double> t(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) t[static_cast<std::size_t>(i)] = i * dt;
  return t;
}

}  // namespace macrospin
