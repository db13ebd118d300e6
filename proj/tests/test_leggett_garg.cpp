#include <gtest/gtest.h>

#include <macrospin/macrospin.hpp>

#include "oracles.hpp"

using namespace macrospin;

namespace {

/// Sequential-measurement correlator from dense matrices: measure at t_a, evolve, measure at t_b.
double brute_correlator(double j, const oracle::Mat& rho, const oracle::Mat& u_before, const oracle::Mat& u_between,
                        int dm) {
  const int n = oracle::dim(j);
  const oracle::Mat r = u_before * rho * u_before.adjoint();
  double c = 0.0;
  const int slots = (n + dm - 1) / dm;
  auto sign = [&](int s) {
    const double lo = s * dm - j, hi = std::min(s * dm + dm - 1, n - 1) - j;
    return 0.5 * (lo + hi) >= 0 ? 1.0 : -1.0;
  };
  for (int a = 0; a < slots; ++a) {
    oracle::Mat pa = oracle::Mat::Zero(n, n);
    for (int k = a * dm; k < std::min(n, a * dm + dm); ++k) pa(k, k) = 1.0;
    const oracle::Mat branch = u_between * pa * r * pa * u_between.adjoint();
    for (int b = 0; b < slots; ++b) {
      double p = 0.0;
      for (int k = b * dm; k < std::min(n, b * dm + dm); ++k) p += branch(k, k).real();
      c += sign(a) * sign(b) * p;
    }
  }
  return c;
}

}  // namespace

TEST(LeggettGarg, SpinHalfMatchesAnalyticCurve) {
  const SpinJ j = SpinJ::from_twice(1);
  const PrecessionSpec spec(Vec3(1, 0, 0), 1.0);
  const auto sweep = lg_sweep(DensityOperator::maximally_mixed(j), spec, make_partition(j, 1), 0.0, std::numbers::pi, 61);
  for (const auto& r : sweep) EXPECT_NEAR(r.K, oracle::lg_spin_half(r.omega_tau), 1e-12);
  const LgResult peak = lg_correlator(j, spec, std::numbers::pi / 3, make_partition(j, 1));
  EXPECT_NEAR(peak.K, 1.5, 1e-6);
}

TEST(LeggettGarg, CorrelatorsMatchDenseSequentialMeasurement) {
  RandomStream rng(101);
  const SpinJ j = SpinJ::from_twice(5);
  const DensityOperator rho = random_density(j, rng);
  const Vec3 axis = Vec3(0.6, 0.0, 0.8);
  const PrecessionSpec spec(axis, 1.3);
  const double tau = 0.45;
  const SlotPartition part = make_partition(j, 2);
  const LgResult r = lg_correlator(rho, spec, tau, part);
  const oracle::Mat u = oracle::rotation(2.5, axis, 1.3 * tau);
  const oracle::Mat id = oracle::Mat::Identity(6, 6);
  EXPECT_NEAR(r.c12, brute_correlator(2.5, rho.matrix(), id, u, 2), 1e-13);
  EXPECT_NEAR(r.c23, brute_correlator(2.5, rho.matrix(), u, u, 2), 1e-13);
  EXPECT_NEAR(r.c13, brute_correlator(2.5, rho.matrix(), id, u * u, 2), 1e-13);
  EXPECT_NEAR(r.K, r.c12 + r.c23 - r.c13, 1e-15);
}

TEST(LeggettGarg, CoarseLargeSpinRespectsBound) {
  const SpinJ j = SpinJ::from_twice(100);
  const PrecessionSpec spec(Vec3(1, 0, 0), 1.0);
  const auto sweep = lg_sweep(DensityOperator::maximally_mixed(j), spec, make_partition(j, 20), 0.0, std::numbers::pi, 46);
  double mx = -10;
  for (const auto& r : sweep) mx = std::max(mx, r.K);
  EXPECT_LE(mx, 1.05);
}

TEST(LeggettGarg, NeedsTwoSlots) {
  const SpinJ j = SpinJ::from_twice(4);
  EXPECT_THROW(lg_correlator(j, PrecessionSpec(), 0.1, make_partition(j, 5)), std::invalid_argument);
  EXPECT_EQ(dichotomic_sign(make_partition(j, 5), 0), 1);
}
