#pragma once

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spin.hpp"

namespace macrospin {

struct GaussLegendre {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// n-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      if (n == 1) dp = 1.0;
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    {
      // Final derivative at the converged node.
      double p0 = 1.0;
      double p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      dp = (n == 1) ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // cos-based guesses run from +1 downwards; store ascending.
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    rule.weights[static_cast<std::size_t>(i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  return rule;
}

/// Product quadrature on the unit sphere: Gauss-Legendre in cos(theta) times a
/// uniform azimuthal rule. Nodes are stored row-major (theta outer, phi inner).
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
    if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("SphereGrid: node counts must be >= 1");
    const GaussLegendre gl = gauss_legendre(n_theta);
    cos_theta_ = gl.nodes;
    row_weight_ = gl.weights;
    theta_.resize(cos_theta_.size());
    for (std::size_t i = 0; i < cos_theta_.size(); ++i) theta_[i] = std::acos(cos_theta_[i]);
    phi_.resize(static_cast<std::size_t>(n_phi));
    for (int k = 0; k < n_phi; ++k) phi_[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * k / n_phi;
  }

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * static_cast<std::size_t>(n_phi_); }

  /// Spherical-harmonic degree integrated exactly.
  int exact_degree() const { return std::min(2 * n_theta_ - 1, n_phi_ - 1); }

  double cos_theta(int row) const { return cos_theta_[static_cast<std::size_t>(row)]; }
  double theta(int row) const { return theta_[static_cast<std::size_t>(row)]; }
  double phi(int col) const { return phi_[static_cast<std::size_t>(col)]; }
  double row_weight(int row) const { return row_weight_[static_cast<std::size_t>(row)]; }
  double phi_weight() const { return 2.0 * std::numbers::pi / n_phi_; }

  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(n_phi_) + static_cast<std::size_t>(col);
  }
  Direction direction(std::size_t node) const {
    return {theta(int(node / n_phi_)), phi(int(node % n_phi_))};
  }
  double weight(std::size_t node) const { return row_weight(int(node / n_phi_)) * phi_weight(); }

  bool same_as(const SphereGrid& o) const { return n_theta_ == o.n_theta_ && n_phi_ == o.n_phi_; }

 private:
  int n_theta_;
  int n_phi_;
  std::vector<double> cos_theta_;
  std::vector<double> theta_;
  std::vector<double> row_weight_;
  std::vector<double> phi_;
};

using GridPtr = std::shared_ptr<const SphereGrid>;

/// Grid exact for spherical harmonics up to degree l_max.
inline GridPtr build_grid(int l_max) {
  if (l_max < 0) throw std::invalid_argument("build_grid: l_max must be >= 0");
  return std::make_shared<const SphereGrid>(l_max + 1, std::max(1, l_max + 1));
}

/// Smallest grid on which the Q-function of a spin-j state integrates exactly.
inline GridPtr exact_q_grid(SpinJ j) { return build_grid(j.twice()); }

}  // namespace macrospin
