#pragma once

// State multipoles rho_LM = Tr(rho T_LM^dagger) over the spherical tensor operators
//   T_LM = sum_{m,m'} (-1)^{j-m'} <j m; j -m' | L M> |m><m'|.
//
// Clebsch-Gordan coefficients come from diagonalizing J^2 on each fixed-M block
// of j (x) j. The block is a symmetric tridiagonal matrix with eigenvalues
// L(L+1) separated by at least 2(L+1), so the eigenvectors are accurate to
// working precision; the sign is fixed by <j j; j M-j | L M> > 0.

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "state.hpp"

namespace macrospin {

/// Band storage of all T_LM for one spin. T_LM has entries only at (k, k - M).
class TensorOperatorBasis {
 public:
  explicit TensorOperatorBasis(SpinJ j) : j_(j) {
    const int n = j.twice();
    const int l_max = n;
    bands_.resize(static_cast<std::size_t>((l_max + 1) * (l_max + 1)));
    const double jv = j.value();
    const double jj1 = jv * (jv + 1.0);
    for (int M = 0; M <= l_max; ++M) {
      // Product basis |m1, m2 = M - m1>, m1 from M - j to j; index t = k1 - M.
      const int size = n - M + 1;
      Eigen::MatrixXd j2 = Eigen::MatrixXd::Zero(size, size);
      for (int t = 0; t < size; ++t) {
        const double m1 = (t + M) - jv;
        const double m2 = M - m1;
        j2(t, t) = 2.0 * jj1 + 2.0 * m1 * m2;
        if (t + 1 < size) {
          // <m1+1, m2-1| J1+ J2- |m1, m2>
          const double v = std::sqrt(jj1 - m1 * (m1 + 1.0)) * std::sqrt(jj1 - m2 * (m2 - 1.0));
          j2(t + 1, t) = v;
          j2(t, t + 1) = v;
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j2);
      for (int idx = 0; idx < size; ++idx) {
        const int L = M + idx;
        Eigen::VectorXd cg = es.eigenvectors().col(idx);
        if (cg(size - 1) < 0) cg = -cg;
        // T_LM(k, k') with m = m1, m' = -m2: k = t + M, k' = n - (n - t) ... m' = -(M - m1) = m1 - M.
        std::vector<double> band(static_cast<std::size_t>(size));
        for (int t = 0; t < size; ++t) {
          const double m1 = (t + M) - jv;
          const double mp = m1 - M;
          band[static_cast<std::size_t>(t)] = parity(jv - mp) * cg(t);
        }
        bands_[index(L, M)] = std::move(band);
        if (M > 0) {
          // <j m1; j m2 | L -M> = (-1)^{2j-L} <j -m1; j -m2 | L M>, giving
          // T_{L,-M}(k, k+M) from T_{L,M}(k+M, k) up to the phase below.
          std::vector<double> neg(static_cast<std::size_t>(size));
          for (int t = 0; t < size; ++t) {
            // T_{L,-M} entry at row k = t (m = t - j), column k + M (m' = m + M).
            const double m = t - jv;
            const double mp = m + M;
            // CG <j m; j -m' | L -M> = (-1)^{2j-L} <j -m; j m' | L M>, stored at t' with m1 = -m.
            const int tp = static_cast<int>(std::lround(-m - M + jv));
            const double c = cg(tp);
            neg[static_cast<std::size_t>(t)] = parity(jv - mp) * parity(2.0 * jv - L) * c;
          }
          bands_[index(L, -M)] = std::move(neg);
        }
      }
    }
  }

  SpinJ spin() const { return j_; }
  int l_max() const { return j_.twice(); }

  /// Band values of T_LM: element t sits at (row, col) = (t + max(M,0), t + max(-M,0)).
  const std::vector<double>& band(int L, int M) const { return bands_[index(L, M)]; }

  static int row_offset(int M) { return M > 0 ? M : 0; }
  static int col_offset(int M) { return M < 0 ? -M : 0; }

  CMatrix dense(int L, int M) const {
    CMatrix out = CMatrix::Zero(j_.dim(), j_.dim());
    const auto& b = band(L, M);
    for (std::size_t t = 0; t < b.size(); ++t)
      out(int(t) + row_offset(M), int(t) + col_offset(M)) = b[t];
    return out;
  }

  /// <j|T_L0|j>, the coherent-projector factor: <Omega|T_LM|Omega> = kappa_L sqrt(4pi/(2L+1)) Y_LM(Omega).
  double coherent_factor(int L) const { return band(L, 0).back(); }

 private:
  static double parity(double e) {
    const long v = std::lround(e);
    return (v % 2 == 0) ? 1.0 : -1.0;
  }
  std::size_t index(int L, int M) const { return static_cast<std::size_t>(L * L + (M + L)); }

  SpinJ j_;
  std::vector<std::vector<double>> bands_;
};

/// Coefficients rho_LM, L = 0..2j, M = -L..L.
class MultipoleCoeffs {
 public:
  MultipoleCoeffs(SpinJ j, std::vector<Complex> coefficients) : j_(j), c_(std::move(coefficients)) {
    const int n = j.twice() + 1;
    if (c_.size() != static_cast<std::size_t>(n * n)) throw DimensionMismatch("MultipoleCoeffs: wrong size");
  }
  SpinJ spin() const { return j_; }
  int l_max() const { return j_.twice(); }
  Complex operator()(int L, int M) const { return c_[static_cast<std::size_t>(L * L + M + L)]; }
  const std::vector<Complex>& raw() const { return c_; }

 private:
  SpinJ j_;
  std::vector<Complex> c_;
};

inline MultipoleCoeffs state_multipoles(const CMatrix& rho, const TensorOperatorBasis& basis) {
  const SpinJ j = basis.spin();
  detail::require_square(j, rho, "state_multipoles");
  const int lm = basis.l_max();
  std::vector<Complex> c(static_cast<std::size_t>((lm + 1) * (lm + 1)));
  for (int L = 0; L <= lm; ++L) {
    for (int M = -L; M <= L; ++M) {
      const auto& b = basis.band(L, M);
      Complex s = 0.0;
      // Tr(rho T^dagger) = sum_ab rho_ab conj(T_ab); T is real.
      for (std::size_t t = 0; t < b.size(); ++t)
        s += rho(int(t) + TensorOperatorBasis::row_offset(M), int(t) + TensorOperatorBasis::col_offset(M)) * b[t];
      c[static_cast<std::size_t>(L * L + M + L)] = s;
    }
  }
  return {j, std::move(c)};
}

inline MultipoleCoeffs state_multipoles(const DensityOperator& rho) {
  return state_multipoles(rho.matrix(), TensorOperatorBasis(rho.spin()));
}

/// sum_LM rho_LM T_LM.
inline CMatrix reconstruct(const MultipoleCoeffs& coeffs, const TensorOperatorBasis& basis) {
  require_same_spin(coeffs.spin(), basis.spin(), "reconstruct");
  const SpinJ j = coeffs.spin();
  CMatrix out = CMatrix::Zero(j.dim(), j.dim());
  for (int L = 0; L <= coeffs.l_max(); ++L) {
    for (int M = -L; M <= L; ++M) {
      const auto& b = basis.band(L, M);
      const Complex c = coeffs(L, M);
      for (std::size_t t = 0; t < b.size(); ++t)
        out(int(t) + TensorOperatorBasis::row_offset(M), int(t) + TensorOperatorBasis::col_offset(M)) += c * b[t];
    }
  }
  return out;
}

inline CMatrix reconstruct(const MultipoleCoeffs& coeffs) { return reconstruct(coeffs, TensorOperatorBasis(coeffs.spin())); }

}  // namespace macrospin
