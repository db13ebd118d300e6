// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
//   acceptance            all criteria
//   acceptance 4 9        selected criteria

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

#include <macrospin/cli/runner.hpp>
#include <macrospin/macrospin.hpp>

using namespace macrospin;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(double v) {
  char b[40];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

PureState superposition(SpinJ j, Direction a, Direction b) {
  return PureState::normalized(j, coherent_state(j, a).amplitudes() + coherent_state(j, b).amplitudes());
}

// 1. |<a|b>|^2 = ((1 + cos Theta)/2)^{2j}.
//
// For far-apart directions the sum over m cancels down to ((1+c)/2)^j while its
// terms are O(1), so the sum is evaluated in MPFR with enough digits to absorb
// that cancellation; the law is then compared in the same precision.
Outcome overlap_law() {
  using boost::multiprecision::mpfr_float;
  RandomStream rng(1001);
  double worst = 0.0;
  int max_digits = 0;
  for (int twice : {1, 10, 100, 1000}) {
    const SpinJ j = SpinJ::from_twice(twice);
    std::vector<std::pair<Direction, Direction>> pairs;
    int digits = 30;
    for (int i = 0; i < 100; ++i) {
      pairs.push_back({random_direction(rng), random_direction(rng)});
      const double c = pairs.back().first.unit_vector().dot(pairs.back().second.unit_vector());
      const double half = std::max(0.5 * (1.0 + c), 1e-300);
      digits = std::max(digits, 30 + static_cast<int>(std::ceil(-j.value() * std::log10(half))));
    }
    max_digits = std::max(max_digits, digits);
    mpfr_float::default_precision(static_cast<unsigned>(digits));
    const auto table = half_log_binomials<mpfr_float>(twice);
    for (const auto& [a, b] : pairs) {
      const auto la = coherent_log_amplitudes<mpfr_float>(j, mpfr_float(a.theta), mpfr_float(a.phi), table);
      const auto lb = coherent_log_amplitudes<mpfr_float>(j, mpfr_float(b.theta), mpfr_float(b.phi), table);
      const mpfr_float p = log_overlap_probability<mpfr_float>(la, lb);
      const mpfr_float cos_t = sin(mpfr_float(a.theta)) * sin(mpfr_float(b.theta)) * cos(mpfr_float(a.phi - b.phi)) +
                               cos(mpfr_float(a.theta)) * cos(mpfr_float(b.theta));
      const mpfr_float law = pow((1 + cos_t) / 2, twice);
      const mpfr_float rel = abs(p / law - 1);
      worst = std::max(worst, rel.convert_to<double>());
    }
  }
  return {worst <= 1e-9, "max rel err " + fmt(worst) + " <= 1e-9 over 4 x 100 pairs, j in {1/2,5,50,500} (" +
                             std::to_string(max_digits) + " digits max)"};
}

// 2. ||J_Omega |Omega> - j |Omega>|| <= 1e-10 j.
Outcome eigen_relation() {
  RandomStream rng(1002);
  double worst_ratio = 0.0;
  for (int twice : {1, 2, 5, 10, 20, 50, 100}) {
    const SpinJ j = SpinJ::from_twice(twice);
    for (int i = 0; i < 20; ++i) {
      const Direction d = random_direction(rng);
      const CVector psi = coherent_state(j, d).amplitudes();
      const double r = (j_omega_operator(j, d).matrix() * psi - j.value() * psi).norm();
      worst_ratio = std::max(worst_ratio, r / (1e-10 * j.value()));
    }
  }
  return {worst_ratio <= 1.0, "max residual / (1e-10 j) = " + fmt(worst_ratio) + " over 20 directions, j = 1/2..50"};
}

// 3. |integral Q - 1| <= 1e-10.
Outcome q_normalization() {
  RandomStream rng(1003);
  double worst = 0.0;
  for (int jj : {2, 10, 50}) {
    const SpinJ j = SpinJ::from_twice(2 * jj);
    const GridPtr g = exact_q_grid(j);
    for (int i = 0; i < 20; ++i) worst = std::max(worst, std::abs(q_function(random_density(j, rng), g).integral() - 1.0));
  }
  return {worst <= 1e-10, "max |int Q - 1| = " + fmt(worst) + " <= 1e-10, 20 states per j in {2,10,50}"};
}

// 4. Q-band slot probabilities versus exact Born probabilities for coherent inputs.
Outcome q_band_regime() {
  const double thetas[] = {std::numbers::pi / 6, std::numbers::pi / 3, std::numbers::pi / 2, 2 * std::numbers::pi / 3,
                           5 * std::numbers::pi / 6};
  int mono_fail = 0, bound_fail = 0, cases = 0;
  double worst_at_5 = 0.0, worst_rise = 0.0;
  std::string first_rise;
  for (int jj : {25, 100, 400}) {
    const SpinJ j = SpinJ::from_twice(2 * jj);
    const int s = static_cast<int>(std::ceil(std::sqrt(double(jj)) - 1e-9));
    const GridPtr g = exact_q_grid(j);
    for (double th : thetas) {
      ++cases;
      const PureState psi = coherent_state(j, Direction::from_angles(th, 0.3));
      const QMap q = q_function(psi, g);
      auto err = [&](int dm) {
        const SlotPartition p = make_partition(j, dm);
        return exact_slot_probs(psi, p).max_abs_difference(approx_slot_probs_via_q(q, p).distribution);
      };
      double prev = err(s);
      bool mono = true;
      for (int f : {2, 4, 8}) {
        const double e = err(f * s);
        if (e > prev) {
          mono = false;
          if (e - prev > worst_rise) {
            worst_rise = e - prev;
            first_rise = "j=" + std::to_string(jj) + " theta=" + fmt(th) + " dm " + std::to_string(f / 2 * s) + "->" +
                         std::to_string(f * s) + ": " + fmt(prev) + "->" + fmt(e);
          }
        }
        prev = e;
      }
      const double e5 = err(5 * s);
      worst_at_5 = std::max(worst_at_5, e5);
      mono_fail += !mono;
      bound_fail += e5 > 0.02;
    }
  }
  std::string d = std::to_string(cases - mono_fail) + "/" + std::to_string(cases) + " monotone, " +
                  std::to_string(cases - bound_fail) + "/" + std::to_string(cases) + " <= 0.02 at 5 ceil(sqrt j) (worst " +
                  fmt(worst_at_5) + ")";
  if (!first_rise.empty()) d += "; largest rise " + first_rise;
  return {mono_fail == 0 && bound_fail == 0, d};
}

// 5. Mixture residual: zero for slot-block-diagonal states, closed form for cat states.
Outcome mixture_residual_exactness() {
  RandomStream rng(1005);
  double worst_block = 0.0;
  for (int i = 0; i < 10; ++i) {
    const int twice = 2 + static_cast<int>(rng.uniform() * 99);  // j in [1, 50]
    const SpinJ j = SpinJ::from_twice(twice);
    const int dm = 1 + static_cast<int>(rng.uniform() * twice);
    const SlotPartition p = make_partition(j, dm);
    worst_block = std::max(worst_block, mixture_residual(random_block_diagonal(p, rng), p, *exact_q_grid(j)));
  }
  double worst_cat = 0.0;
  for (int jj = 1; jj <= 25; ++jj) {
    const SpinJ j = SpinJ::from_twice(2 * jj);
    const double r = mixture_residual(DensityOperator::from_pure(cat_state(j)), make_partition(j, jj + 1), *exact_q_grid(j));
    const double closed = (2.0 * jj + 1) / (4 * std::numbers::pi) * std::pow(4.0, -jj);
    worst_cat = std::max(worst_cat, std::abs(r / closed - 1));
  }
  return {worst_block <= 1e-12 && worst_cat <= 1e-9,
          "block-diagonal max " + fmt(worst_block) + " <= 1e-12; cat max rel err " + fmt(worst_cat) + " <= 1e-9"};
}

// 6. Least-squares slope of ln(cat gap) against j over j = 1..25.
Outcome cat_gap_slope() {
  std::vector<double> x, y, yr;
  for (int jj = 1; jj <= 25; ++jj) {
    const SpinJ j = SpinJ::from_twice(2 * jj);
    const double r = mixture_residual(DensityOperator::from_pure(cat_state(j)), make_partition(j, jj + 1), *exact_q_grid(j));
    x.push_back(jj);
    y.push_back(std::log(r));
    yr.push_back(std::log(r) - std::log((2.0 * jj + 1) / (4 * std::numbers::pi)));
  }
  const double target = -2 * std::numbers::ln2;
  const double slope = cli::detail::fitted_slope(x, y);
  const double rate = cli::detail::fitted_slope(x, yr);
  const double rel = std::abs(slope / target - 1);
  return {rel <= 0.01, "slope " + fmt(slope) + " vs -2 ln 2 = " + fmt(target) + ", rel dev " + fmt(rel) +
                           " (bound 0.01); with the (2j+1)/(4 pi) prefactor removed: " + fmt(rate)};
}

// 7. Invasiveness (L1) non-increasing as delta_m doubles; zero on block-diagonal states.
Outcome invasiveness_monotone() {
  const double pi = std::numbers::pi;
  const std::pair<Direction, Direction> inputs[] = {
      {Direction::from_angles(pi / 3, 0), Direction::from_angles(2 * pi / 3, pi / 2)},
      {Direction::from_angles(pi / 2, 0), Direction::from_angles(pi / 2, pi)},
      {Direction::from_angles(0.4, 1.0), Direction::from_angles(2.5, 4.0)},
      {Direction::from_angles(1.2, 0.3), Direction::from_angles(1.9, 0.3)}};
  int cases = 0, ok = 0;
  double worst_rise = -1.0;
  double worst_block = 0.0;
  RandomStream rng(1007);
  for (int jj : {25, 100}) {
    const SpinJ j = SpinJ::from_twice(2 * jj);
    const GridPtr g = exact_q_grid(j);
    for (const auto& [a, b] : inputs) {
      const DensityOperator rho = DensityOperator::from_pure(superposition(j, a, b));
      double prev = std::numeric_limits<double>::infinity();
      double rise = -std::numeric_limits<double>::infinity();
      for (int dm = 1;; dm *= 2) {
        const int d = std::min(dm, j.dim());
        const double v = invasiveness(rho, make_partition(j, d), g, Metric::L1);
        rise = std::max(rise, v - prev);
        prev = v;
        if (d == j.dim()) break;
      }
      ++cases;
      ok += rise <= 1e-12;
      worst_rise = std::max(worst_rise, rise);
    }
    for (int dm : {1, 5, 2 * jj / 3}) {
      const SlotPartition p = make_partition(j, dm);
      worst_block = std::max(worst_block, invasiveness(random_block_diagonal(p, rng), p, g, Metric::L1));
    }
  }
  return {ok == cases && worst_block <= 1e-12,
          std::to_string(ok) + "/" + std::to_string(cases) + " superpositions non-increasing (largest step " +
              fmt(worst_rise) + "); block-diagonal max " + fmt(worst_block) + " <= 1e-12"};
}

// 8. Coherent trajectory under precession: unitary, coarse non-selective, fine non-selective.
Outcome classical_emergence() {
  const SpinJ j = SpinJ::from_twice(200);
  const PureState psi = coherent_state(j, Direction::from_angles(std::numbers::pi / 3, std::numbers::pi / 4));
  const PrecessionSpec spec(Vec3(1, 0, 0), 1.0);
  const auto times = uniform_times(20, std::numbers::pi / 10);
  const double u = quantum_trajectory(psi, spec, times, nullptr, MeasurementMode::Unitary).max_angle_error();
  const SlotPartition coarse = make_partition(j, 50), fine = make_partition(j, 1);
  const double c = quantum_trajectory(psi, spec, times, &coarse, MeasurementMode::Nonselective).max_angle_error();
  const double f = quantum_trajectory(psi, spec, times, &fine, MeasurementMode::Nonselective).max_angle_error();
  const double bound = 5.0 / std::sqrt(100.0);
  return {u <= 1e-10 && c <= bound && f > c, "unitary " + fmt(u) + " <= 1e-10 rad; coarse (dm=50) " + fmt(c) + " <= " +
                                                 fmt(bound) + " rad; fine (dm=1) " + fmt(f) + " > coarse"};
}

// 9. Leggett-Garg: spin-1/2 violation, restored bound for coarse large spin.
Outcome leggett_garg() {
  const PrecessionSpec spec(Vec3(1, 0, 0), 1.0);
  const SpinJ half = SpinJ::from_twice(1);
  const double k_half = lg_correlator(half, spec, std::numbers::pi / 3, make_partition(half, 1)).K;
  const SpinJ j = SpinJ::from_twice(100);
  const auto sweep = lg_sweep(DensityOperator::maximally_mixed(j), spec, make_partition(j, 20), 0.0, std::numbers::pi, 91);
  double mx = -10;
  for (const auto& r : sweep) mx = std::max(mx, r.K);
  return {std::abs(k_half - 1.5) <= 1e-6 && mx <= 1.05,
          "j=1/2 K(pi/3) = " + fmt(k_half) + " (|K-1.5| <= 1e-6); j=50 dm=20 max K = " + fmt(mx) + " <= 1.05"};
}

// 10. P-function round trip and cat-state negativity.
Outcome p_round_trip() {
  RandomStream rng(1010);
  double worst = 0.0;
  for (int twice = 1; twice <= 10; ++twice) {
    const SpinJ j = SpinJ::from_twice(twice);
    for (int i = 0; i < 3; ++i) {
      const DensityOperator rho = random_density(j, rng);
      worst = std::max(worst, trace_distance(state_from_p(p_function(rho, build_grid(2 * twice))), rho));
    }
  }
  const SpinJ two = SpinJ::from_twice(4);
  const double pmin = p_function(DensityOperator::from_pure(cat_state(two)), build_grid(8)).min();
  return {worst <= 1e-6 && pmin < 0.0,
          "max trace distance " + fmt(worst) + " <= 1e-6 (j <= 5); cat j=2 min P = " + fmt(pmin) + " < 0"};
}

// 11. Identical config and seed give byte-identical artifacts.
Outcome reproducibility() {
  using namespace macrospin::cli;
  const std::string configs[] = {
      R"({"experiment": "trajectory", "j": 40, "delta_m": [1, 7], "modes": ["unitary", "nonselective", "selective"], "seed": 99})",
      R"({"experiment": "pround", "j": [1, 2.5], "seed": 5, "state": {"kind": "random", "count": 2}})",
      R"js({"experiment": "lg", "j": [0.5, 10], "delta_m": ["sqrt(j)"], "sweep": {"count": 13}})js"};
  int identical = 0, total = 0;
  for (const auto& text : configs) {
    const ExperimentConfig c = parse_config(text);
    const fs::path a = fs::temp_directory_path() / "macrospin_acc_a", b = fs::temp_directory_path() / "macrospin_acc_b";
    fs::remove_all(a);
    fs::remove_all(b);
    write_artifacts(a, c, run(c, 1));
    write_artifacts(b, c, run(c, 4));
    for (const auto& e : fs::directory_iterator(a)) {
      auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
      };
      ++total;
      identical += slurp(e.path()) == slurp(b / e.path().filename());
    }
  }
  return {identical == total && total > 0,
          std::to_string(identical) + "/" + std::to_string(total) + " artifacts byte-identical across reruns"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"coherent-state overlap law", overlap_law},
      {"eigen-relation", eigen_relation},
      {"Q normalization", q_normalization},
      {"Q-band slot probabilities in the coarse regime", q_band_regime},
      {"mixture residual exactness", mixture_residual_exactness},
      {"exponential indistinguishability slope", cat_gap_slope},
      {"non-invasiveness monotonicity", invasiveness_monotone},
      {"classical emergence", classical_emergence},
      {"Leggett-Garg", leggett_garg},
      {"P-function round trip", p_round_trip},
      {"reproducibility", reproducibility}};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int n = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(n)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failed += !o.pass;
    std::printf("criterion %2d %s: %s: %s [%.1fs]\n", n, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
