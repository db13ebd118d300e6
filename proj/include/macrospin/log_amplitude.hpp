#pragma once

// Coherent-state amplitudes in log form.
//
// The magnitudes sqrt(C(2j, j+m)) cos^{j+m}(theta/2) sin^{j-m}(theta/2) overflow
// (binomial) and underflow (powers) long before j = 1000, so every kernel here
// works with log|a| and arg(a) and only exponentiates at the very end. All
// kernels are templated on the real type so the same formulas can be run in
// extended precision (e.g. boost::multiprecision::mpfr_float) when a
// cancellation-heavy sum needs more than 16 digits.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "spin.hpp"

namespace macrospin {

template <class Real = double>
struct LogAmplitude {
  Real log_magnitude = -std::numeric_limits<Real>::infinity();
  Real phase = Real(0);

  bool is_zero() const { return log_magnitude == -std::numeric_limits<Real>::infinity(); }
};

inline std::complex<double> to_complex(const LogAmplitude<double>& a) {
  if (a.is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(a.log_magnitude), a.phase);
}

/// 0.5 * log C(n, k) for k = 0..n.
template <class Real = double>
std::vector<Real> half_log_binomials(int n) {
  using std::lgamma;
  std::vector<Real> out(static_cast<std::size_t>(n) + 1);
  const Real lg_n = lgamma(Real(n + 1));
  for (int k = 0; 2 * k <= n; ++k) {
    const Real v = (lg_n - lgamma(Real(k + 1)) - lgamma(Real(n - k + 1))) / 2;
    out[static_cast<std::size_t>(k)] = v;
    out[static_cast<std::size_t>(n - k)] = v;
  }
  return out;
}

/// log|<m|Omega>| for every basis index, given cos(theta/2) and sin(theta/2).
///
/// Zero factors are handled exactly: at a pole only one amplitude survives.
template <class Real = double>
void coherent_log_magnitudes(SpinJ j, const Real& cos_half, const Real& sin_half,
                             std::span<const Real> half_log_binom, std::span<Real> out) {
  using std::log;
  const int n = j.twice();
  const Real neg_inf = -std::numeric_limits<Real>::infinity();
  const bool cos_zero = (cos_half == Real(0));
  const bool sin_zero = (sin_half == Real(0));
  const Real log_c = cos_zero ? neg_inf : Real(log(cos_half));
  const Real log_s = sin_zero ? neg_inf : Real(log(sin_half));
  for (int k = 0; k <= n; ++k) {
    // k = j + m powers of cos, n - k = j - m powers of sin.
    const int pc = k;
    const int ps = n - k;
    if ((cos_zero && pc > 0) || (sin_zero && ps > 0)) {
      out[static_cast<std::size_t>(k)] = neg_inf;
      continue;
    }
    Real v = half_log_binom[static_cast<std::size_t>(k)];
    if (pc > 0) v += Real(pc) * log_c;
    if (ps > 0) v += Real(ps) * log_s;
    out[static_cast<std::size_t>(k)] = v;
  }
}

/// Amplitudes <m|theta,phi> in log form, basis order m = -j..j.
///
/// Phase convention: <m|Omega> carries e^{-i m phi}, which makes |Omega> the
/// +j eigenvector of sin(theta)cos(phi) Jx + sin(theta)sin(phi) Jy + cos(theta) Jz
/// and equal to exp(-i phi Jz) exp(-i theta Jy)|j, j>.
template <class Real = double>
std::vector<LogAmplitude<Real>> coherent_log_amplitudes(SpinJ j, const Real& theta, const Real& phi,
                                                        std::span<const Real> half_log_binom) {
  using std::cos;
  using std::sin;
  const int n = j.twice();
  if (static_cast<int>(half_log_binom.size()) != n + 1)
    throw DimensionMismatch("coherent_log_amplitudes: binomial table has wrong size");
  const Real half = theta / 2;
  Real c = cos(half);
  Real s = sin(half);
  // Exact poles: sin(0) and cos(pi/2) must vanish identically.
  if (theta == Real(0)) s = Real(0);
  const Real pi = Real(std::numbers::pi_v<double>);
  if (theta == pi) c = Real(0);
  std::vector<Real> mags(static_cast<std::size_t>(n) + 1);
  coherent_log_magnitudes<Real>(j, c, s, half_log_binom, mags);
  std::vector<LogAmplitude<Real>> out(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const Real m = Real(2 * k - n) / 2;
    out[static_cast<std::size_t>(k)] = {mags[static_cast<std::size_t>(k)], -m * phi};
  }
  return out;
}

template <class Real = double>
std::vector<LogAmplitude<Real>> coherent_log_amplitudes(SpinJ j, const Real& theta, const Real& phi) {
  const auto table = half_log_binomials<Real>(j.twice());
  return coherent_log_amplitudes<Real>(j, theta, phi, table);
}

/// |<a|b>|^2 for two states given in log form, summed in the working precision of Real.
template <class Real = double>
Real log_overlap_probability(std::span<const LogAmplitude<Real>> a,
                             std::span<const LogAmplitude<Real>> b) {
  using std::cos;
  using std::exp;
  using std::sin;
  if (a.size() != b.size()) throw DimensionMismatch("log_overlap_probability: size mismatch");
  Real re = 0;
  Real im = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].is_zero() || b[k].is_zero()) continue;
    const Real mag = exp(a[k].log_magnitude + b[k].log_magnitude);
    const Real dphase = b[k].phase - a[k].phase;
    re += mag * cos(dphase);
    im += mag * sin(dphase);
  }
  return re * re + im * im;
}

}  // namespace macrospin
