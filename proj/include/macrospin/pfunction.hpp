#pragma once

// Quasi-diagonal P representation rho = \int P(Omega) |Omega><Omega| d^2 Omega.
//
// With P = sum p_LM Y_LM and <Omega|T_LM|Omega> = kappa_L sqrt(4pi/(2L+1)) Y_LM(Omega),
// the multipoles satisfy rho_LM = kappa_L sqrt(4pi/(2L+1)) p_LM. kappa_L falls off
// like a binomial ratio in L, which is what makes the inversion ill-conditioned
// at large j.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "multipoles.hpp"
#include "qfunction.hpp"

namespace macrospin {

inline constexpr int kDefaultPFunctionTwiceJCap = 40;  // j <= 20

class PMap : public SphereFunction {
 public:
  using SphereFunction::SphereFunction;
};

namespace detail {

/// Y_LM(theta, phi) with the Condon-Shortley phase.
inline Complex spherical_harmonic(int L, int M, double theta, double phi) {
  const int am = std::abs(M);
  const double y = std::sph_legendre(unsigned(L), unsigned(am), theta);
  const Complex v = y * std::polar(1.0, am * phi);
  if (M >= 0) return v;
  return ((am % 2) ? -1.0 : 1.0) * std::conj(v);
}

}  // namespace detail

/// P-function coefficients p_LM from the state multipoles.
inline MultipoleCoeffs p_coefficients(const MultipoleCoeffs& rho_lm, const TensorOperatorBasis& basis) {
  std::vector<Complex> p(rho_lm.raw().size());
  for (int L = 0; L <= rho_lm.l_max(); ++L) {
    const double factor = basis.coherent_factor(L) * std::sqrt(4.0 * std::numbers::pi / (2.0 * L + 1.0));
    for (int M = -L; M <= L; ++M) p[static_cast<std::size_t>(L * L + M + L)] = rho_lm(L, M) / factor;
  }
  return {rho_lm.spin(), std::move(p)};
}

inline PMap p_function(const DensityOperator& rho, GridPtr grid, int twice_j_cap = kDefaultPFunctionTwiceJCap) {
  const SpinJ j = rho.spin();
  if (j.twice() > twice_j_cap)
    throw std::domain_error("p_function: j = " + std::to_string(j.value()) +
                            " exceeds the cap; the inversion is ill-conditioned");
  const TensorOperatorBasis basis(j);
  const MultipoleCoeffs p = p_coefficients(state_multipoles(rho.matrix(), basis), basis);
  const int lm = p.l_max();
  std::vector<double> values(grid->size(), 0.0);
  std::vector<Complex> by_m(static_cast<std::size_t>(2 * lm + 1));
  for (int r = 0; r < grid->n_theta(); ++r) {
    // c_M(theta) = sum_L p_LM Y_LM(theta, 0); P = sum_M c_M e^{i M phi}
    std::fill(by_m.begin(), by_m.end(), Complex(0.0));
    for (int L = 0; L <= lm; ++L)
      for (int M = -L; M <= L; ++M)
        by_m[static_cast<std::size_t>(M + lm)] += p(L, M) * detail::spherical_harmonic(L, M, grid->theta(r), 0.0);
    for (int c = 0; c < grid->n_phi(); ++c) {
      Complex s = 0.0;
      for (int M = -lm; M <= lm; ++M) s += by_m[static_cast<std::size_t>(M + lm)] * std::polar(1.0, M * grid->phi(c));
      values[grid->index(r, c)] = s.real();
    }
  }
  return PMap(std::move(grid), std::move(values), j);
}

/// Quadrature of P(Omega) |Omega><Omega|; needs a grid exact at degree 4j.
inline DensityOperator state_from_p(const PMap& p) {
  const SpinJ j = p.spin();
  const SphereGrid& g = p.grid();
  if (g.exact_degree() < 2 * j.twice())
    throw std::invalid_argument("state_from_p: grid too coarse (needs exact degree >= 4j)");
  const detail::CoherentRows rows(j, g);
  CMatrix rho = CMatrix::Zero(j.dim(), j.dim());
  CVector amp(j.dim());
  for (int r = 0; r < g.n_theta(); ++r) {
    const auto mag = rows.row(r);
    for (int c = 0; c < g.n_phi(); ++c) {
      const std::size_t node = g.index(r, c);
      for (int k = 0; k < j.dim(); ++k)
        amp(k) = mag[static_cast<std::size_t>(k)] * std::polar(1.0, -j.m_at(k) * g.phi(c));
      rho.noalias() += (g.weight(node) * p.values()[node]) * (amp * amp.adjoint());
    }
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(j, std::move(rho), 1e-8);
}

}  // namespace macrospin
