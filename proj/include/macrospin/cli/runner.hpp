#pragma once

// Experiment runner. All artifacts are produced in memory, with independent
// sweep points computed concurrently and gathered by index, then written
// serially. Output depends only on the config, never on thread count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "../csv.hpp"
#include "../macrospin.hpp"
#include "config.hpp"

namespace macrospin::cli {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitInvariant = 2, kExitIo = 3 };

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double bound = 0.0;
  std::string relation;  // how value relates to bound when passing, e.g. "<="
};

struct Artifact {
  std::string filename;
  std::string content;
};

struct RunResult {
  json derived = json::object();
  std::vector<Check> checks;
  std::vector<Artifact> files;

  void check(std::string name, double value, const std::string& relation, double bound) {
    bool ok = false;
    if (relation == "<=") ok = value <= bound;
    else if (relation == ">=") ok = value >= bound;
    else if (relation == "<") ok = value < bound;
    else if (relation == ">") ok = value > bound;
    checks.push_back({std::move(name), ok, value, bound, relation});
  }
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

/// Runs fn(i) for i in [0, n) on up to `threads` workers. The first exception is rethrown.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace detail {

inline std::string j_tag(SpinJ j) {
  return j.is_integer() ? std::to_string(j.twice() / 2) : std::to_string(j.twice()) + "_2";
}

inline std::string j_key(SpinJ j) {
  return j.is_integer() ? std::to_string(j.twice() / 2) : std::to_string(j.twice()) + "/2";
}

/// splitmix64 finalizer: independent seeds per (j, instance) regardless of evaluation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = seed;
  for (std::uint64_t v : {a, b}) {
    z += 0x9e3779b97f4a7c15ULL + v;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
  }
  return z;
}

inline PureState build_pure(const ExperimentConfig& c, SpinJ j) {
  const StateSpec& s = c.state;
  switch (s.kind) {
    case StateKind::Coherent:
      return coherent_state(j, Direction::from_angles(s.theta, s.phi));
    case StateKind::Superposition:
      return PureState::normalized(j, coherent_state(j, Direction::from_angles(s.theta, s.phi)).amplitudes() +
                                          coherent_state(j, Direction::from_angles(s.theta2, s.phi2)).amplitudes());
    case StateKind::Dicke:
      return PureState::dicke(j, s.m);
    case StateKind::Cat:
      return cat_state(j);
    default:
      throw std::invalid_argument("state kind is not a pure state");
  }
}

inline DensityOperator build_state(const ExperimentConfig& c, SpinJ j, int instance,
                                   const SlotPartition* part = nullptr) {
  switch (c.state.kind) {
    case StateKind::Mixed:
      return DensityOperator::maximally_mixed(j);
    case StateKind::Random: {
      RandomStream rng(derive_seed(*c.seed, static_cast<std::uint64_t>(j.twice()), static_cast<std::uint64_t>(instance)));
      return random_density(j, rng);
    }
    case StateKind::BlockDiagonal: {
      if (!part) throw std::invalid_argument("block_diagonal state needs a partition");
      RandomStream rng(derive_seed(*c.seed, static_cast<std::uint64_t>(j.twice()) << 20 | unsigned(part->delta_m()),
                                   static_cast<std::uint64_t>(instance)));
      return random_block_diagonal(*part, rng);
    }
    default:
      return DensityOperator::from_pure(build_pure(c, j));
  }
}

inline GridPtr grid_for(const ExperimentConfig& c, SpinJ j) {
  return c.grid_lmax ? build_grid(*c.grid_lmax) : exact_q_grid(j);
}

inline Metric metric_of(const ExperimentConfig& c) { return c.metric == MetricChoice::L1 ? Metric::L1 : Metric::Sup; }

/// Least-squares slope of y against x.
inline double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

inline std::string render(const std::function<void(std::ostream&)>& fn) {
  std::ostringstream os;
  fn(os);
  return os.str();
}

/// Largest increase between consecutive entries (<= 0 means non-increasing).
inline double max_increase(const std::vector<double>& v) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) m = std::max(m, v[i] - v[i - 1]);
  return v.size() < 2 ? 0.0 : m;
}

// --- experiments --------------------------------------------------------

inline RunResult run_qmap(const ExperimentConfig& c, int threads) {
  struct Item {
    SpinJ j;
    int instance;
  };
  std::vector<Item> items;
  for (SpinJ j : c.j)
    for (int i = 0; i < c.state.count; ++i) items.push_back({j, i});
  struct Out {
    double integral, min, max, uniform_err;
    bool resolved;
    std::string csv;
  };
  std::vector<Out> outs(items.size());
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const auto& it = items[k];
    const QMap q = q_function(build_state(c, it.j, it.instance), grid_for(c, it.j));
    double uerr = 0.0;
    for (double v : q.values()) uerr = std::max(uerr, std::abs(v - 0.25 / std::numbers::pi));
    outs[k] = {q.integral(), q.min(), q.max(), uerr, q.resolved(),
               render([&](std::ostream& os) { csv::write_sphere_function(os, q); })};
  });
  RunResult r;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& it = items[k];
    const std::string id = j_tag(it.j) + (c.state.count > 1 ? "_" + std::to_string(it.instance) : "");
    r.files.push_back({"qmap_j" + id + ".csv", std::move(outs[k].csv)});
    json d = {{"j", it.j.value()}, {"instance", it.instance}, {"integral", outs[k].integral},
              {"min", outs[k].min}, {"max", outs[k].max}, {"grid_resolves_q", outs[k].resolved}};
    r.derived["maps"].push_back(d);
    if (outs[k].resolved) r.check("q_integral_unit_j" + id, std::abs(outs[k].integral - 1.0), "<=", 1e-10);
    r.check("q_nonnegative_j" + id, outs[k].min, ">=", -1e-12);
    if (c.state.kind == StateKind::Mixed) r.check("q_uniform_j" + id, outs[k].uniform_err, "<=", 1e-12);
  }
  return r;
}

inline RunResult run_slots(const ExperimentConfig& c, int threads) {
  struct Item {
    SpinJ j;
    int dm;
  };
  std::vector<Item> items;
  for (SpinJ j : c.j)
    for (int dm : c.delta_ms(j)) items.push_back({j, dm});
  struct Out {
    double err, defect;
    std::string csv;
  };
  std::vector<Out> outs(items.size());
  // Q is computed once per j.
  std::vector<std::optional<QMap>> qs(c.j.size());
  std::vector<std::optional<DensityOperator>> rhos(c.j.size());
  parallel_for(c.j.size(), threads, [&](std::size_t i) {
    rhos[i].emplace(build_state(c, c.j[i], 0));
    qs[i].emplace(q_function(*rhos[i], grid_for(c, c.j[i])));
  });
  auto j_index = [&](SpinJ j) {
    for (std::size_t i = 0; i < c.j.size(); ++i)
      if (c.j[i].twice() == j.twice()) return i;
    return std::size_t(0);
  };
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const auto& it = items[k];
    const std::size_t ji = j_index(it.j);
    const SlotPartition part = make_partition(it.j, it.dm);
    const SlotDistribution exact = exact_slot_probs(*rhos[ji], part);
    const ApproxSlotProbs approx = approx_slot_probs_via_q(*qs[ji], part);
    outs[k] = {exact.max_abs_difference(approx.distribution), approx.normalization_defect(),
               render([&](std::ostream& os) { csv::write_slots(os, exact, approx.distribution); })};
  });
  RunResult r;
  json errs = json::object();
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& it = items[k];
    r.files.push_back({"slots_j" + j_tag(it.j) + "_dm" + std::to_string(it.dm) + ".csv", std::move(outs[k].csv)});
    errs[j_key(it.j)][std::to_string(it.dm)] = outs[k].err;
    r.check("q_band_total_unit_j" + j_tag(it.j) + "_dm" + std::to_string(it.dm), std::abs(outs[k].defect), "<=", 1e-10);
  }
  r.derived["max_abs_err"] = errs;
  for (SpinJ j : c.j) {
    std::vector<std::pair<int, double>> by_dm;
    for (std::size_t k = 0; k < items.size(); ++k)
      if (items[k].j.twice() == j.twice()) by_dm.push_back({items[k].dm, outs[k].err});
    std::sort(by_dm.begin(), by_dm.end());
    std::vector<double> e;
    for (auto& p : by_dm) e.push_back(p.second);
    if (e.size() >= 2) r.check("max_abs_err_nonincreasing_j" + j_tag(j), max_increase(e), "<=", 0.0);
  }
  return r;
}

inline RunResult run_catdecay(const ExperimentConfig& c, int threads) {
  struct Out {
    int dm;
    double residual, closed;
  };
  std::vector<Out> outs(c.j.size());
  parallel_for(c.j.size(), threads, [&](std::size_t i) {
    const SpinJ j = c.j[i];
    // Two slots, with m = -j and m = +j on different sides.
    const int dm = (j.dim() + 1) / 2;
    const SlotPartition part = make_partition(j, dm);
    const DensityOperator rho = build_state(c, j, 0);
    const auto grid = grid_for(c, j);
    outs[i] = {dm, mixture_residual(rho, part, *grid), cat_gap(j)};
  });
  RunResult r;
  std::string body = "j,delta_m,residual,closed_form,rel_err\n";
  std::vector<double> xs, ys, yr;
  double worst = 0.0;
  for (std::size_t i = 0; i < c.j.size(); ++i) {
    const SpinJ j = c.j[i];
    const double rel = std::abs(outs[i].residual - outs[i].closed) / outs[i].closed;
    worst = std::max(worst, rel);
    body += csv::number(j.value()) + "," + std::to_string(outs[i].dm) + "," + csv::number(outs[i].residual) + "," +
            csv::number(outs[i].closed) + "," + csv::number(rel) + "\n";
    xs.push_back(j.value());
    ys.push_back(std::log(outs[i].residual));
    yr.push_back(std::log(outs[i].residual) - std::log((j.twice() + 1.0) / (4.0 * std::numbers::pi)));
  }
  r.files.push_back({"catdecay.csv", body});
  r.derived["max_rel_err_vs_closed_form"] = worst;
  if (c.state.kind == StateKind::Cat) r.check("residual_matches_closed_form", worst, "<=", 1e-9);
  if (xs.size() >= 2) {
    const double target = -2.0 * std::numbers::ln2;
    const double slope = fitted_slope(xs, ys);
    const double rate = fitted_slope(xs, yr);
    r.derived["fitted_log_slope"] = slope;
    r.derived["fitted_exponential_rate"] = rate;
    r.derived["target_slope"] = target;
    r.check("fitted_log_slope_within_1pct", std::abs(slope / target - 1.0), "<=", 0.01);
    r.check("fitted_exponential_rate_within_1pct", std::abs(rate / target - 1.0), "<=", 0.01);
  } else {
    r.derived["fitted_log_slope"] = nullptr;
    r.derived["fitted_exponential_rate"] = nullptr;
  }
  return r;
}

inline RunResult run_invasiveness(const ExperimentConfig& c, int threads) {
  struct Item {
    SpinJ j;
    int dm;
    int instance;
  };
  std::vector<Item> items;
  const int count = c.state.kind == StateKind::BlockDiagonal || c.state.kind == StateKind::Random ? c.state.count : 1;
  for (SpinJ j : c.j)
    for (int dm : c.delta_ms(j))
      for (int i = 0; i < count; ++i) items.push_back({j, dm, i});
  std::vector<double> vals(items.size());
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const auto& it = items[k];
    const SlotPartition part = make_partition(it.j, it.dm);
    vals[k] = invasiveness(build_state(c, it.j, it.instance, &part), part, grid_for(c, it.j), metric_of(c));
  });
  RunResult r;
  std::string body = "j,delta_m,instance,invasiveness\n";
  for (std::size_t k = 0; k < items.size(); ++k)
    body += csv::number(items[k].j.value()) + "," + std::to_string(items[k].dm) + "," +
            std::to_string(items[k].instance) + "," + csv::number(vals[k]) + "\n";
  r.files.push_back({"invasiveness.csv", body});
  json per = json::object();
  for (std::size_t k = 0; k < items.size(); ++k)
    if (items[k].instance == 0) per[j_key(items[k].j)][std::to_string(items[k].dm)] = vals[k];
  r.derived["invasiveness"] = per;
  r.derived["metric"] = c.metric == MetricChoice::L1 ? "L1" : "sup";
  if (c.state.kind == StateKind::BlockDiagonal) {
    double m = 0.0;
    for (double v : vals) m = std::max(m, v);
    r.check("block_diagonal_not_disturbed", m, "<=", 1e-12);
  } else {
    for (SpinJ j : c.j)
      for (int inst = 0; inst < count; ++inst) {
        std::vector<std::pair<int, double>> by_dm;
        for (std::size_t k = 0; k < items.size(); ++k)
          if (items[k].j.twice() == j.twice() && items[k].instance == inst) by_dm.push_back({items[k].dm, vals[k]});
        std::sort(by_dm.begin(), by_dm.end());
        std::vector<double> e;
        for (auto& p : by_dm) e.push_back(p.second);
        // Round-off floor: differences below 1e-12 are not resolved.
        if (e.size() >= 2)
          r.check("invasiveness_nonincreasing_j" + j_tag(j) + (count > 1 ? "_" + std::to_string(inst) : ""),
                  max_increase(e), "<=", 1e-12);
      }
  }
  return r;
}

inline RunResult run_trajectory(const ExperimentConfig& c, int threads) {
  struct Item {
    SpinJ j;
    ModeChoice mode;
    int dm;  // 0 for unitary
  };
  std::vector<Item> items;
  for (SpinJ j : c.j)
    for (ModeChoice m : c.modes) {
      if (m == ModeChoice::Unitary) {
        items.push_back({j, m, 0});
      } else {
        for (int dm : c.delta_ms(j)) items.push_back({j, m, dm});
      }
    }
  const PrecessionSpec spec(Vec3(c.axis[0], c.axis[1], c.axis[2]), c.omega);
  const auto times = uniform_times(c.steps, c.dt);
  struct Out {
    double max_err;
    std::string csv;
  };
  std::vector<Out> outs(items.size());
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const auto& it = items[k];
    const PureState psi = build_pure(c, it.j);
    TrajectoryRecord rec;
    if (it.mode == ModeChoice::Unitary) {
      rec = quantum_trajectory(psi, spec, times, nullptr, MeasurementMode::Unitary);
    } else {
      const SlotPartition part = make_partition(it.j, it.dm);
      if (it.mode == ModeChoice::Nonselective) {
        rec = quantum_trajectory(psi, spec, times, &part, MeasurementMode::Nonselective);
      } else {
        RandomStream rng(derive_seed(*c.seed, static_cast<std::uint64_t>(it.j.twice()), static_cast<std::uint64_t>(it.dm)));
        rec = quantum_trajectory(psi, spec, times, &part, MeasurementMode::Selective, &rng);
      }
    }
    outs[k] = {rec.max_angle_error(), render([&](std::ostream& os) { csv::write_trajectory(os, rec); })};
  });
  RunResult r;
  json errs = json::object();
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& it = items[k];
    const std::string name = detail::mode_name(it.mode);
    const std::string id = "j" + j_tag(it.j) + "_" + name + (it.dm ? "_dm" + std::to_string(it.dm) : "");
    r.files.push_back({"trajectory_" + id + ".csv", std::move(outs[k].csv)});
    if (it.dm)
      errs[j_key(it.j)][name][std::to_string(it.dm)] = outs[k].max_err;
    else
      errs[j_key(it.j)][name] = outs[k].max_err;
    if (it.mode == ModeChoice::Unitary) r.check("unitary_matches_classical_" + id, outs[k].max_err, "<=", 1e-10);
    const int coarse_from = static_cast<int>(std::ceil(std::sqrt(it.j.value()) - 1e-9));
    if (it.mode == ModeChoice::Nonselective && it.dm > 1 && it.dm >= coarse_from)
      r.check("coarse_stays_classical_" + id, outs[k].max_err, "<=", 5.0 / std::sqrt(it.j.value()));
  }
  // Fine-grained (delta_m = 1) deviates more than every coarse nonselective run at the same j.
  for (SpinJ j : c.j) {
    std::optional<double> fine;
    double coarse = -1.0;
    for (std::size_t k = 0; k < items.size(); ++k) {
      if (items[k].j.twice() != j.twice() || items[k].mode != ModeChoice::Nonselective) continue;
      if (items[k].dm == 1) fine = outs[k].max_err;
      else coarse = std::max(coarse, outs[k].max_err);
    }
    if (fine && coarse >= 0.0) r.check("fine_exceeds_coarse_j" + j_tag(j), *fine - coarse, ">", 0.0);
  }
  r.derived["max_angle_err_rad"] = errs;
  return r;
}

inline RunResult run_lg(const ExperimentConfig& c, int threads) {
  struct Item {
    SpinJ j;
    int dm;
    int point;
  };
  std::vector<Item> items;
  for (SpinJ j : c.j)
    for (int dm : c.delta_ms(j))
      for (int p = 0; p < c.sweep.count; ++p) items.push_back({j, dm, p});
  const PrecessionSpec spec(Vec3(c.axis[0], c.axis[1], c.axis[2]), c.omega);
  std::vector<std::optional<DensityOperator>> rhos(c.j.size());
  for (std::size_t i = 0; i < c.j.size(); ++i) rhos[i].emplace(build_state(c, c.j[i], 0));
  std::vector<LgResult> outs(items.size());
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const auto& it = items[k];
    std::size_t ji = 0;
    while (c.j[ji].twice() != it.j.twice()) ++ji;
    const double wt = c.sweep.count == 1 ? c.sweep.from
                                         : c.sweep.from + it.point * (c.sweep.to - c.sweep.from) / (c.sweep.count - 1);
    outs[k] = lg_correlator(*rhos[ji], spec, wt / c.omega, make_partition(it.j, it.dm));
  });
  RunResult r;
  json maxk = json::object();
  const bool axis_transverse = std::abs(c.axis[2]) < 1e-15;
  for (SpinJ j : c.j)
    for (int dm : c.delta_ms(j)) {
      std::vector<LgResult> rows;
      for (std::size_t k = 0; k < items.size(); ++k)
        if (items[k].j.twice() == j.twice() && items[k].dm == dm) rows.push_back(outs[k]);
      const std::string id = "j" + j_tag(j) + "_dm" + std::to_string(dm);
      r.files.push_back({"lg_" + id + ".csv", render([&](std::ostream& os) { csv::write_lg(os, rows, dm); })});
      auto best = std::max_element(rows.begin(), rows.end(), [](const LgResult& a, const LgResult& b) { return a.K < b.K; });
      maxk[j_key(j)][std::to_string(dm)] = {{"max_K", best->K}, {"at_omega_tau", best->omega_tau}};
      if (j.twice() == 1 && axis_transverse) {
        double dev = 0.0;
        for (const auto& row : rows)
          dev = std::max(dev, std::abs(row.K - (2.0 * std::cos(row.omega_tau) - std::cos(2.0 * row.omega_tau))));
        r.check("spin_half_matches_2cos_minus_cos2_" + id, dev, "<=", 1e-6);
      }
      const int coarse_from = static_cast<int>(std::ceil(std::sqrt(j.value()) - 1e-9));
      if (dm > 1 && dm >= coarse_from) r.check("coarse_max_K_" + id, best->K, "<=", 1.05);
    }
  r.derived["max_K"] = maxk;
  return r;
}

inline RunResult run_pround(const ExperimentConfig& c, int threads) {
  struct Item {
    SpinJ j;
    int instance;
  };
  std::vector<Item> items;
  for (SpinJ j : c.j)
    for (int i = 0; i < c.state.count; ++i) items.push_back({j, i});
  struct Out {
    double td, pmin, pint;
    std::string csv;
  };
  std::vector<Out> outs(items.size());
  parallel_for(items.size(), threads, [&](std::size_t k) {
    const auto& it = items[k];
    const DensityOperator rho = build_state(c, it.j, it.instance);
    const GridPtr grid = build_grid(c.grid_lmax ? *c.grid_lmax : 2 * it.j.twice());
    const PMap p = p_function(rho, grid);
    const DensityOperator back = state_from_p(p);
    outs[k] = {trace_distance(rho, back), p.min(), p.integral(),
               it.instance == 0 ? render([&](std::ostream& os) { csv::write_sphere_function(os, p); }) : std::string()};
  });
  RunResult r;
  std::string body = "j,instance,trace_distance,p_min,p_integral\n";
  double worst = 0.0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& it = items[k];
    body += csv::number(it.j.value()) + "," + std::to_string(it.instance) + "," + csv::number(outs[k].td) + "," +
            csv::number(outs[k].pmin) + "," + csv::number(outs[k].pint) + "\n";
    worst = std::max(worst, outs[k].td);
    if (it.instance == 0) r.files.push_back({"pmap_j" + j_tag(it.j) + ".csv", std::move(outs[k].csv)});
    if (c.state.kind == StateKind::Cat) r.check("cat_p_negative_j" + j_tag(it.j), outs[k].pmin, "<", 0.0);
  }
  r.files.push_back({"pround.csv", body});
  r.derived["max_trace_distance"] = worst;
  r.check("round_trip_trace_distance", worst, "<=", 1e-6);
  return r;
}

}  // namespace detail

inline RunResult run(const ExperimentConfig& c, int threads) {
  switch (c.experiment) {
    case Experiment::QMap: return detail::run_qmap(c, threads);
    case Experiment::Slots: return detail::run_slots(c, threads);
    case Experiment::CatDecay: return detail::run_catdecay(c, threads);
    case Experiment::Invasiveness: return detail::run_invasiveness(c, threads);
    case Experiment::Trajectory: return detail::run_trajectory(c, threads);
    case Experiment::Lg: return detail::run_lg(c, threads);
    case Experiment::PRound: return detail::run_pround(c, threads);
  }
  throw std::logic_error("run: unknown experiment");
}

inline json summary_json(const ExperimentConfig& c, const RunResult& r) {
  json s;
  s["experiment"] = experiment_name(c.experiment);
  s["config"] = config_to_json(c);
  s["derived"] = r.derived;
  json checks = json::array();
  for (const Check& ch : r.checks)
    checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"value", ch.value}, {"relation", ch.relation},
                      {"bound", ch.bound}});
  s["checks"] = checks;
  s["all_checks_passed"] = r.all_passed();
  json files = json::array();
  for (const auto& f : r.files) files.push_back(f.filename);
  s["artifacts"] = files;
  return s;
}

/// Writes every artifact plus summary.json into dir; throws IoError.
inline void write_artifacts(const std::filesystem::path& dir, const ExperimentConfig& c, const RunResult& r) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  auto write = [&](const std::string& name, const std::string& content) {
    const auto path = dir / name;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    os << content;
    os.flush();
    if (!os) throw IoError("write failed for '" + path.string() + "'");
  };
  for (const auto& f : r.files) write(f.filename, f.content);
  write("summary.json", summary_json(c, r).dump(2) + "\n");
}

}  // namespace macrospin::cli
