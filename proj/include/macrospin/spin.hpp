#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace macrospin {

using Vec3 = Eigen::Vector3d;

/// Thrown when two objects built for different spins are combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a computed result breaks a mathematical invariant
/// (non-Hermitian density operator, probabilities not summing to one, ...).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Spin quantum number j, stored as the integer 2j.
///
/// Basis index k = 0..2j corresponds to m = k - j, so k = 0 is m = -j.
class SpinJ {
 public:
  constexpr SpinJ() = default;

  static constexpr SpinJ from_twice(int twice_j) {
    if (twice_j < 0) throw std::invalid_argument("SpinJ: 2j must be non-negative");
    return SpinJ(twice_j);
  }

  /// Accepts integer or half-integer values (0, 0.5, 1, ...).
  static SpinJ from_value(double j) {
    const double t = 2.0 * j;
    const double r = std::round(t);
    if (!(std::abs(t - r) < 1e-9) || r < 0)
      throw std::invalid_argument("SpinJ: j must be a non-negative multiple of 1/2, got " +
                                  std::to_string(j));
    return SpinJ(static_cast<int>(r));
  }

  constexpr int twice() const { return twice_j_; }
  constexpr double value() const { return 0.5 * twice_j_; }
  constexpr int dim() const { return twice_j_ + 1; }
  constexpr bool is_integer() const { return twice_j_ % 2 == 0; }

  /// m at basis index k.
  constexpr double m_at(int k) const { return k - 0.5 * twice_j_; }

  friend constexpr bool operator==(SpinJ, SpinJ) = default;

 private:
  explicit constexpr SpinJ(int twice_j) : twice_j_(twice_j) {}
  int twice_j_ = 0;
};

inline void require_same_spin(SpinJ a, SpinJ b, const char* where) {
  if (a != b)
    throw DimensionMismatch(std::string(where) + ": spin mismatch (2j=" +
                            std::to_string(a.twice()) + " vs 2j=" + std::to_string(b.twice()) + ")");
}

/// Point on the unit sphere: polar angle theta in [0, pi], azimuth phi in [0, 2pi).
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  static Direction from_angles(double theta, double phi) {
    constexpr double pi = std::numbers::pi;
    if (!(theta >= -1e-12 && theta <= pi + 1e-12))
      throw std::invalid_argument("Direction: theta must lie in [0, pi]");
    theta = std::clamp(theta, 0.0, pi);
    phi = std::fmod(phi, 2.0 * pi);
    if (phi < 0) phi += 2.0 * pi;
    if (phi >= 2.0 * pi) phi = 0.0;
    return {theta, phi};
  }

  static Direction from_vector(const Vec3& v) {
    const double r = v.norm();
    if (!(r > 0)) throw std::invalid_argument("Direction: zero vector has no direction");
    const double rho = std::hypot(v.x(), v.y());
    return from_angles(std::atan2(rho, v.z()), std::atan2(v.y(), v.x()));
  }

  Vec3 unit_vector() const {
    const double s = std::sin(theta);
    return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
  }

  static Direction north() { return {0.0, 0.0}; }
  static Direction south() { return {std::numbers::pi, 0.0}; }
};

/// Angle between two vectors, accurate for nearly parallel and antiparallel inputs.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

inline double angle_between(const Direction& a, const Direction& b) {
  return angle_between(a.unit_vector(), b.unit_vector());
}

}  // namespace macrospin
