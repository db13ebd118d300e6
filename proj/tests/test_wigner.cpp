#include <gtest/gtest.h>

#include <macrospin/macrospin.hpp>

#include "oracles.hpp"

using namespace macrospin;

TEST(WignerD, MatchesFactorialSum) {
  for (int twice : {1, 2, 3, 6, 11, 20}) {
    const SpinJ j = SpinJ::from_twice(twice);
    for (double beta : {0.0, 0.3, 1.2, std::numbers::pi / 2, 2.9, std::numbers::pi}) {
      const Eigen::MatrixXd d = wigner_d(j, beta);
      for (int r = 0; r < j.dim(); ++r)
        for (int c = 0; c < j.dim(); ++c)
          EXPECT_NEAR(d(r, c), oracle::wigner_small_d(j.value(), j.m_at(r), j.m_at(c), beta), 1e-12)
              << "2j=" << twice << " beta=" << beta;
    }
  }
}

TEST(WignerD, OrthogonalAtLargeSpin) {
  for (int twice : {200, 1000}) {
    const Eigen::MatrixXd d = wigner_d(SpinJ::from_twice(twice), 1.1);
    const double err = (d.transpose() * d - Eigen::MatrixXd::Identity(twice + 1, twice + 1)).cwiseAbs().maxCoeff();
    EXPECT_LT(err, 1e-11) << "2j=" << twice;
  }
}

TEST(WignerMatrix, EqualsExponentialOfGenerator) {
  RandomStream rng(17);
  for (int twice : {1, 4, 9}) {
    const SpinJ j = SpinJ::from_twice(twice);
    for (int rep = 0; rep < 4; ++rep) {
      const Vec3 axis = random_direction(rng).unit_vector();
      const double angle = 6.0 * rng.uniform() - 3.0;
      const CMatrix u = Rotation::axis_angle(j, axis, angle).matrix();
      EXPECT_LT((u - oracle::rotation(j.value(), axis, angle)).norm(), 1e-12);
    }
  }
}

TEST(Su2, HomomorphismAndDoubleCover) {
  const SpinJ j = SpinJ::from_twice(5);
  const Su2 a = Su2::axis_angle(Vec3(1, 0, 0), 0.7);
  const Su2 b = Su2::axis_angle(Vec3(0, 0.6, 0.8), -1.3);
  EXPECT_LT((wigner_matrix(j, a * b) - wigner_matrix(j, a) * wigner_matrix(j, b)).norm(), 1e-13);
  // A 2 pi turn is -1 on half-integer spin and +1 on integer spin.
  const Su2 full = Su2::axis_angle(Vec3(0, 1, 0), 2 * std::numbers::pi);
  EXPECT_LT((wigner_matrix(j, full) + CMatrix::Identity(6, 6)).norm(), 1e-13);
  const SpinJ k = SpinJ::from_twice(4);
  EXPECT_LT((wigner_matrix(k, full) - CMatrix::Identity(5, 5)).norm(), 1e-13);
}

TEST(Su2, RotationMatrixMatchesRodrigues) {
  const Vec3 axis = Vec3(1, 2, -2).normalized();
  const Su2 u = Su2::axis_angle(axis, 0.9);
  const Vec3 v(0.3, -0.4, 0.5);
  EXPECT_LT((u.rotation_matrix() * v - oracle::rodrigues(v, axis, 0.9)).norm(), 1e-14);
}

TEST(Rotate, NorthPoleToCoherentState) {
  RandomStream rng(23);
  for (int twice : {1, 8, 50, 400}) {
    const SpinJ j = SpinJ::from_twice(twice);
    for (int rep = 0; rep < 3; ++rep) {
      const Direction d = random_direction(rng);
      const PureState r = rotate(coherent_state(j, Direction::north()), d);
      EXPECT_GT(fidelity(r, coherent_state(j, d)), 1.0 - 1e-12) << "2j=" << twice;
    }
  }
}

TEST(Rotate, RotatesExpectationVector) {
  const SpinJ j = SpinJ::from_twice(13);
  RandomStream rng(29);
  const DensityOperator rho = random_density(j, rng);
  const Vec3 axis = Vec3(0.2, -0.5, 0.7).normalized();
  const Rotation r = Rotation::axis_angle(j, axis, 1.4);
  const Vec3 after = spin_expectation(r.apply(rho));
  EXPECT_LT((after - oracle::rodrigues(spin_expectation(rho), axis, 1.4)).norm(), 1e-12);
}
