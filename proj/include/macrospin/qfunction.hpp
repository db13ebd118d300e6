#pragma once

// Husimi Q-function Q(Omega) = (2j+1)/(4 pi) <Omega|rho|Omega> sampled on a SphereGrid.
//
// Evaluation works row by row: on a fixed-theta row the coherent amplitudes are
// <m|Omega> = mag_m(theta) e^{-i m phi}, so a whole row reduces to a polynomial in
// e^{i phi} evaluated by Horner's rule. Pure states cost O(2j) per node; operators
// cost O((2j)^2) per row plus O(2j) per node.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <span>
#include <vector>

#include "grid.hpp"
#include "log_amplitude.hpp"
#include "state.hpp"

namespace macrospin {

enum class Metric { L1, Sup };

/// Real function on the nodes of a grid.
class SphereFunction {
 public:
  SphereFunction(GridPtr grid, std::vector<double> values, SpinJ j)
      : grid_(std::move(grid)), values_(std::move(values)), j_(j) {
    if (!grid_) throw std::invalid_argument("SphereFunction: null grid");
    if (values_.size() != grid_->size()) throw DimensionMismatch("SphereFunction: value count != node count");
  }

  const SphereGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  SpinJ spin() const { return j_; }

  double integral() const {
    double s = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) s += grid_->weight(i) * values_[i];
    return s;
  }
  double min() const { return *std::min_element(values_.begin(), values_.end()); }
  double max() const { return *std::max_element(values_.begin(), values_.end()); }

  /// Azimuthal mean on each theta row.
  std::vector<double> row_means() const {
    std::vector<double> out(static_cast<std::size_t>(grid_->n_theta()), 0.0);
    for (int r = 0; r < grid_->n_theta(); ++r) {
      double s = 0.0;
      for (int c = 0; c < grid_->n_phi(); ++c) s += values_[grid_->index(r, c)];
      out[static_cast<std::size_t>(r)] = s / grid_->n_phi();
    }
    return out;
  }

 private:
  GridPtr grid_;
  std::vector<double> values_;
  SpinJ j_;
};

/// Q-function samples. `resolved()` is false when the grid is too coarse for
/// exact normalization; the values are still correct pointwise.
class QMap : public SphereFunction {
 public:
  QMap(GridPtr grid, std::vector<double> values, SpinJ j) : SphereFunction(std::move(grid), std::move(values), j) {}
  bool resolved() const { return grid().exact_degree() >= spin().twice(); }
};

namespace detail {

/// |<m|Omega>| on every theta row of a grid.
class CoherentRows {
 public:
  CoherentRows(SpinJ j, const SphereGrid& grid) : j_(j), rows_(static_cast<std::size_t>(grid.n_theta())) {
    const auto table = half_log_binomials<double>(j.twice());
    std::vector<double> logs(static_cast<std::size_t>(j.dim()));
    for (int r = 0; r < grid.n_theta(); ++r) {
      const double x = grid.cos_theta(r);
      const double c = std::sqrt(std::max(0.0, 0.5 * (1.0 + x)));
      const double s = std::sqrt(std::max(0.0, 0.5 * (1.0 - x)));
      coherent_log_magnitudes<double>(j, c, s, table, logs);
      auto& row = rows_[static_cast<std::size_t>(r)];
      row.resize(logs.size());
      for (std::size_t k = 0; k < logs.size(); ++k) row[k] = std::exp(logs[k]);
    }
  }
  std::span<const double> row(int r) const { return rows_[static_cast<std::size_t>(r)]; }

 private:
  SpinJ j_;
  std::vector<std::vector<double>> rows_;
};

inline Complex horner(std::span<const Complex> coeffs, Complex z) {
  Complex p = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) p = p * z + coeffs[k];
  return p;
}

}  // namespace detail

/// (2j+1)/(4 pi) <Omega|A|Omega> for a Hermitian matrix A (not necessarily a state).
inline std::vector<double> coherent_expectation_values(SpinJ j, const CMatrix& a, const SphereGrid& grid) {
  detail::require_square(j, a, "coherent_expectation_values");
  const int n = j.twice();
  const double pref = (2.0 * j.value() + 1.0) / (4.0 * std::numbers::pi);
  const detail::CoherentRows rows(j, grid);
  std::vector<double> out(grid.size());
  std::vector<Complex> diag_sums(static_cast<std::size_t>(n) + 1);
  for (int r = 0; r < grid.n_theta(); ++r) {
    const auto mag = rows.row(r);
    // S_d = sum_{a-b=d} mag_a mag_b A_ab, d = 0..n; negative d are conjugates.
    double s0 = 0.0;
    for (int k = 0; k <= n; ++k) s0 += mag[static_cast<std::size_t>(k)] * mag[static_cast<std::size_t>(k)] * a(k, k).real();
    diag_sums[0] = 0.0;
    for (int d = 1; d <= n; ++d) {
      Complex s = 0.0;
      for (int b = 0; b + d <= n; ++b)
        s += mag[static_cast<std::size_t>(b + d)] * mag[static_cast<std::size_t>(b)] * a(b + d, b);
      diag_sums[static_cast<std::size_t>(d)] = s;
    }
    for (int c = 0; c < grid.n_phi(); ++c) {
      const Complex z = std::polar(1.0, grid.phi(c));
      const Complex h = detail::horner(diag_sums, z);
      out[grid.index(r, c)] = pref * (s0 + 2.0 * h.real());
    }
  }
  return out;
}

inline QMap q_function(const DensityOperator& rho, GridPtr grid) {
  auto values = coherent_expectation_values(rho.spin(), rho.matrix(), *grid);
  return QMap(std::move(grid), std::move(values), rho.spin());
}

/// Pure-state Q-function, (2j+1)/(4 pi) |<Omega|psi>|^2, without forming rho.
inline QMap q_function(const PureState& psi, GridPtr grid) {
  const SpinJ j = psi.spin();
  const double pref = (2.0 * j.value() + 1.0) / (4.0 * std::numbers::pi);
  const detail::CoherentRows rows(j, *grid);
  std::vector<double> values(grid->size());
  std::vector<Complex> g(static_cast<std::size_t>(j.dim()));
  for (int r = 0; r < grid->n_theta(); ++r) {
    const auto mag = rows.row(r);
    for (int k = 0; k < j.dim(); ++k) g[static_cast<std::size_t>(k)] = mag[static_cast<std::size_t>(k)] * psi.amplitude(k);
    for (int c = 0; c < grid->n_phi(); ++c) {
      // <Omega|psi> = e^{-i j phi} sum_k g_k e^{i k phi}
      values[grid->index(r, c)] = pref * std::norm(detail::horner(g, std::polar(1.0, grid->phi(c))));
    }
  }
  return QMap(std::move(grid), std::move(values), j);
}

inline double sphere_distance(const SphereFunction& a, const SphereFunction& b, Metric metric) {
  if (!a.grid().same_as(b.grid())) throw DimensionMismatch("q_distance: grids differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    const double d = std::abs(a.values()[i] - b.values()[i]);
    acc = (metric == Metric::L1) ? acc + a.grid().weight(i) * d : std::max(acc, d);
  }
  return acc;
}

inline double q_distance(const QMap& a, const QMap& b, Metric metric) { return sphere_distance(a, b, metric); }

/// L1 (quadrature of |f|) or sup norm of node values.
inline double sphere_norm(const SphereFunction& f, Metric metric) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    const double v = std::abs(f.values()[i]);
    acc = (metric == Metric::L1) ? acc + f.grid().weight(i) * v : std::max(acc, v);
  }
  return acc;
}

}  // namespace macrospin
