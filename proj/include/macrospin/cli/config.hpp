#pragma once

// Experiment configuration: strict JSON parsing into a fully resolved config.
//
// Every key is optional except "j", and "delta_m" for experiments that measure.
// Unknown keys are errors. Error messages carry a JSON-pointer path and, for
// syntax errors, the line and column.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "../spin.hpp"

namespace macrospin::cli {

using json = nlohmann::ordered_json;

class ConfigError : public std::invalid_argument {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::invalid_argument((path.empty() ? std::string("/") : path) + ": " + what) {}
};

enum class Experiment { QMap, Slots, CatDecay, Invasiveness, Trajectory, Lg, PRound };

inline const std::vector<std::pair<std::string, Experiment>>& experiment_names() {
  static const std::vector<std::pair<std::string, Experiment>> names = {
      {"qmap", Experiment::QMap},         {"slots", Experiment::Slots},
      {"catdecay", Experiment::CatDecay}, {"invasiveness", Experiment::Invasiveness},
      {"trajectory", Experiment::Trajectory}, {"lg", Experiment::Lg},
      {"pround", Experiment::PRound}};
  return names;
}

inline std::optional<Experiment> experiment_from_name(const std::string& s) {
  for (const auto& [n, e] : experiment_names())
    if (n == s) return e;
  return std::nullopt;
}

inline std::string experiment_name(Experiment e) {
  for (const auto& [n, v] : experiment_names())
    if (v == e) return n;
  return "?";
}

/// One entry of the delta_m list.
///
///   integer           absolute slot width
///   "c*sqrt(j)"       ceil(c sqrt(j)); "sqrt(j)" means c = 1
///   "doubling"        1, 2, 4, ... up to and including 2j+1
///   "full"            2j+1 (a single slot)
struct DeltaMRule {
  enum class Kind { Absolute, SqrtMultiple, Doubling, Full } kind = Kind::Absolute;
  int absolute = 1;
  double multiple = 1.0;
  std::string text;

  std::vector<int> resolve(SpinJ j) const {
    switch (kind) {
      case Kind::Absolute:
        return {absolute};
      case Kind::SqrtMultiple:
        // The small slack keeps exact products such as 5*sqrt(100) from rounding up.
        return {static_cast<int>(std::ceil(multiple * std::sqrt(j.value()) - 1e-9))};
      case Kind::Doubling: {
        std::vector<int> out;
        for (int d = 1; d < j.dim(); d *= 2) out.push_back(d);
        out.push_back(j.dim());
        return out;
      }
      case Kind::Full:
        return {j.dim()};
    }
    return {};
  }
};

enum class StateKind { Coherent, Cat, Mixed, Superposition, Dicke, Random, BlockDiagonal };

struct StateSpec {
  StateKind kind = StateKind::Coherent;
  double theta = std::numbers::pi / 3;
  double phi = 0.3;
  double theta2 = 2 * std::numbers::pi / 3;
  double phi2 = std::numbers::pi / 2;
  double m = 0.0;
  int count = 1;  // random / block_diagonal instances
};

struct SweepSpec {
  double from = 0.0;
  double to = std::numbers::pi;
  int count = 91;
};

enum class MetricChoice { L1, Sup };
enum class ModeChoice { Unitary, Nonselective, Selective };

struct ExperimentConfig {
  Experiment experiment = Experiment::QMap;
  std::vector<SpinJ> j;
  std::vector<DeltaMRule> delta_m;
  StateSpec state;
  std::optional<int> grid_lmax;
  MetricChoice metric = MetricChoice::L1;
  std::optional<std::uint64_t> seed;
  std::vector<ModeChoice> modes{ModeChoice::Unitary, ModeChoice::Nonselective};
  std::vector<double> axis{1.0, 0.0, 0.0};
  double omega = 1.0;
  int steps = 20;
  double dt = std::numbers::pi / 10;
  SweepSpec sweep;
  std::string out = "out";

  /// Resolved slot widths for one j, in config order, duplicates removed.
  std::vector<int> delta_ms(SpinJ jj) const {
    std::vector<int> out_list;
    for (const auto& r : delta_m)
      for (int d : r.resolve(jj))
        if (std::find(out_list.begin(), out_list.end(), d) == out_list.end()) out_list.push_back(d);
    return out_list;
  }
};

inline bool experiment_measures(Experiment e) {
  return e == Experiment::Slots || e == Experiment::Invasiveness || e == Experiment::Trajectory ||
         e == Experiment::Lg;
}

namespace detail {

inline std::string state_kind_name(StateKind k) {
  switch (k) {
    case StateKind::Coherent: return "coherent";
    case StateKind::Cat: return "cat";
    case StateKind::Mixed: return "mixed";
    case StateKind::Superposition: return "superposition";
    case StateKind::Dicke: return "dicke";
    case StateKind::Random: return "random";
    case StateKind::BlockDiagonal: return "block_diagonal";
  }
  return "?";
}

inline std::string mode_name(ModeChoice m) {
  switch (m) {
    case ModeChoice::Unitary: return "unitary";
    case ModeChoice::Nonselective: return "nonselective";
    case ModeChoice::Selective: return "selective";
  }
  return "?";
}

inline void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError(path + "/" + it.key(), "unknown key (allowed: " + list + ")");
    }
}

inline double get_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(path, "must be finite");
  return d;
}

inline int get_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
  const auto i = v.get<std::int64_t>();
  if (i < INT32_MIN || i > INT32_MAX) throw ConfigError(path, "integer out of range");
  return static_cast<int>(i);
}

inline SpinJ spin_at(double value, const std::string& path) {
  const double twice = 2.0 * value;
  if (!(value > 0.0) || std::abs(twice - std::round(twice)) > 1e-12)
    throw ConfigError(path, "j must be a positive integer or half-integer");
  if (twice > 4000) throw ConfigError(path, "j above 2000 is not supported");
  return SpinJ::from_twice(static_cast<int>(std::lround(twice)));
}

inline std::vector<SpinJ> parse_j(const json& v, const std::string& path) {
  std::vector<SpinJ> out;
  if (v.is_number()) {
    out.push_back(spin_at(get_number(v, path), path));
  } else if (v.is_array()) {
    if (v.empty()) throw ConfigError(path, "list of j values is empty");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = path + "/" + std::to_string(i);
      out.push_back(spin_at(get_number(v[i], p), p));
    }
  } else if (v.is_object()) {
    reject_unknown(v, path, {"from", "to", "step"});
    for (const char* k : {"from", "to"})
      if (!v.contains(k)) throw ConfigError(path, std::string("range needs '") + k + "'");
    const SpinJ from = spin_at(get_number(v["from"], path + "/from"), path + "/from");
    const SpinJ to = spin_at(get_number(v["to"], path + "/to"), path + "/to");
    int twice_step = 2;
    if (v.contains("step")) {
      const double s = get_number(v["step"], path + "/step");
      if (!(s > 0) || std::abs(2 * s - std::round(2 * s)) > 1e-12)
        throw ConfigError(path + "/step", "step must be a positive multiple of 1/2");
      twice_step = static_cast<int>(std::lround(2 * s));
    }
    if (to.twice() < from.twice()) throw ConfigError(path, "'to' is below 'from'");
    for (int t = from.twice(); t <= to.twice(); t += twice_step) out.push_back(SpinJ::from_twice(t));
  } else {
    throw ConfigError(path, "expected a number, a list, or {from, to, step}");
  }
  return out;
}

inline DeltaMRule parse_delta_m_rule(const json& v, const std::string& path) {
  DeltaMRule r;
  if (v.is_number_integer()) {
    r.kind = DeltaMRule::Kind::Absolute;
    r.absolute = get_int(v, path);
    if (r.absolute < 1) throw ConfigError(path, "delta_m must be >= 1");
    r.text = std::to_string(r.absolute);
    return r;
  }
  if (!v.is_string()) throw ConfigError(path, "expected an integer or a rule string");
  const std::string s = v.get<std::string>();
  r.text = s;
  if (s == "doubling") {
    r.kind = DeltaMRule::Kind::Doubling;
    return r;
  }
  if (s == "full") {
    r.kind = DeltaMRule::Kind::Full;
    return r;
  }
  static const std::regex sqrt_rule(R"(^\s*(?:([0-9]*\.?[0-9]+)\s*\*\s*)?sqrt\(\s*j\s*\)\s*$)");
  std::smatch match;
  if (std::regex_match(s, match, sqrt_rule)) {
    r.kind = DeltaMRule::Kind::SqrtMultiple;
    r.multiple = match[1].matched ? std::stod(match[1].str()) : 1.0;
    if (!(r.multiple > 0)) throw ConfigError(path, "multiple of sqrt(j) must be positive");
    return r;
  }
  throw ConfigError(path, "unrecognised delta_m rule '" + s + "' (use an integer, 'c*sqrt(j)', 'doubling' or 'full')");
}

inline StateSpec parse_state(const json& v, const std::string& path, StateSpec s) {
  if (!v.is_object()) throw ConfigError(path, "expected an object");
  reject_unknown(v, path, {"kind", "theta", "phi", "theta2", "phi2", "m", "count"});
  if (v.contains("kind")) {
    if (!v["kind"].is_string()) throw ConfigError(path + "/kind", "expected a string");
    const std::string k = v["kind"].get<std::string>();
    bool found = false;
    for (StateKind c : {StateKind::Coherent, StateKind::Cat, StateKind::Mixed, StateKind::Superposition,
                        StateKind::Dicke, StateKind::Random, StateKind::BlockDiagonal})
      if (state_kind_name(c) == k) {
        s.kind = c;
        found = true;
      }
    if (!found)
      throw ConfigError(path + "/kind",
                        "unknown state kind '" + k +
                            "' (coherent, cat, mixed, superposition, dicke, random, block_diagonal)");
  }
  auto angle = [&](const char* key, double& dst, double hi) {
    if (!v.contains(key)) return;
    dst = get_number(v[key], path + "/" + key);
    if (dst < 0.0 || dst > hi) throw ConfigError(path + "/" + key, "angle out of range");
  };
  angle("theta", s.theta, std::numbers::pi);
  angle("theta2", s.theta2, std::numbers::pi);
  angle("phi", s.phi, 2 * std::numbers::pi);
  angle("phi2", s.phi2, 2 * std::numbers::pi);
  if (v.contains("m")) s.m = get_number(v["m"], path + "/m");
  if (v.contains("count")) {
    s.count = get_int(v["count"], path + "/count");
    if (s.count < 1) throw ConfigError(path + "/count", "must be >= 1");
  }
  return s;
}

inline StateSpec default_state(Experiment e) {
  StateSpec s;
  switch (e) {
    case Experiment::QMap: s.kind = StateKind::Mixed; break;
    case Experiment::CatDecay: s.kind = StateKind::Cat; break;
    case Experiment::Invasiveness: s.kind = StateKind::Superposition; break;
    case Experiment::Lg: s.kind = StateKind::Mixed; break;
    case Experiment::PRound: s.kind = StateKind::Random; break;
    default: s.kind = StateKind::Coherent; break;
  }
  return s;
}

}  // namespace detail

/// Keys accepted at the top level, with their defaults as printed by --help.
inline const char* config_help() {
  return R"help(Config keys (JSON object, unknown keys rejected):
  experiment  must match the command if present
  j           required: number, list, or {"from","to","step"} (step default 1)
  delta_m     required for slots/invasiveness/trajectory/lg: list of
              integers, "c*sqrt(j)" (ceil), "doubling", "full"
  state       {"kind","theta","phi","theta2","phi2","m","count"}
              kind: coherent|cat|mixed|superposition|dicke|random|block_diagonal
              defaults: qmap/lg mixed, catdecay cat, invasiveness superposition,
              pround random, others coherent; theta=pi/3, phi=0.3,
              theta2=2pi/3, phi2=pi/2, m=0, count=1
  grid_lmax   grid exact degree override (default 2j; 4j for pround)
  metric      "L1" (default) or "sup"
  seed        unsigned integer; required for state kinds random/block_diagonal
              and for trajectory mode "selective"
  modes       trajectory: list of "unitary","nonselective","selective"
              (default ["unitary","nonselective"])
  axis        precession axis, unit 3-vector (default [1,0,0])
  omega       precession rate (default 1)
  steps, dt   trajectory steps and spacing (default 20, pi/10)
  sweep       lg: {"from","to","count"} over omega*tau (default 0, pi, 91)
  out         output directory (default "out"; --out overrides)
)help";
}

/// Parses and validates; throws ConfigError.
inline ExperimentConfig parse_config(const std::string& text, std::optional<Experiment> command = std::nullopt) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("", "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col) +
                              ": " + e.what());
  }
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  const std::set<std::string> allowed = {"experiment", "j",    "delta_m", "state", "grid_lmax", "metric", "seed",
                                         "modes",      "axis", "omega",   "steps", "dt",        "sweep",  "out"};
  detail::reject_unknown(doc, "", allowed);

  ExperimentConfig c;
  if (doc.contains("experiment")) {
    if (!doc["experiment"].is_string()) throw ConfigError("/experiment", "expected a string");
    const auto e = experiment_from_name(doc["experiment"].get<std::string>());
    if (!e) throw ConfigError("/experiment", "unknown experiment '" + doc["experiment"].get<std::string>() + "'");
    if (command && *command != *e)
      throw ConfigError("/experiment", "config is for '" + experiment_name(*e) + "' but the command is '" +
                                           experiment_name(*command) + "'");
    c.experiment = *e;
  } else if (command) {
    c.experiment = *command;
  } else {
    throw ConfigError("/experiment", "no experiment given");
  }

  const bool measures = experiment_measures(c.experiment);
  {
    std::vector<std::string> missing;
    if (!doc.contains("j")) missing.push_back("j");
    if (measures && !doc.contains("delta_m")) missing.push_back("delta_m");
    if (!missing.empty()) {
      std::string list;
      for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
      throw ConfigError("", "missing required key(s): " + list);
    }
  }

  c.j = detail::parse_j(doc["j"], "/j");

  if (doc.contains("delta_m")) {
    if (!measures) throw ConfigError("/delta_m", "not used by experiment '" + experiment_name(c.experiment) + "'");
    const json& d = doc["delta_m"];
    if (d.is_array()) {
      if (d.empty()) throw ConfigError("/delta_m", "list is empty");
      for (std::size_t i = 0; i < d.size(); ++i)
        c.delta_m.push_back(detail::parse_delta_m_rule(d[i], "/delta_m/" + std::to_string(i)));
    } else {
      c.delta_m.push_back(detail::parse_delta_m_rule(d, "/delta_m"));
    }
    for (SpinJ jj : c.j)
      for (int dm : c.delta_ms(jj))
        if (dm < 1 || dm > jj.dim())
          throw ConfigError("/delta_m", "resolves to " + std::to_string(dm) + " for j = " + std::to_string(jj.value()) +
                                            ", outside [1, 2j+1]");
    if (c.experiment == Experiment::Lg)
      for (SpinJ jj : c.j)
        for (int dm : c.delta_ms(jj))
          if (dm == jj.dim()) throw ConfigError("/delta_m", "lg needs at least two slots (delta_m < 2j+1)");
  }

  c.state = detail::default_state(c.experiment);
  if (doc.contains("state")) c.state = detail::parse_state(doc["state"], "/state", c.state);

  if (doc.contains("grid_lmax")) {
    c.grid_lmax = detail::get_int(doc["grid_lmax"], "/grid_lmax");
    if (*c.grid_lmax < 0) throw ConfigError("/grid_lmax", "must be >= 0");
  }
  if (doc.contains("metric")) {
    const json& m = doc["metric"];
    if (m == "L1") c.metric = MetricChoice::L1;
    else if (m == "sup") c.metric = MetricChoice::Sup;
    else throw ConfigError("/metric", "expected \"L1\" or \"sup\"");
  }
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned()) throw ConfigError("/seed", "expected a non-negative integer");
    c.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("modes")) {
    if (c.experiment != Experiment::Trajectory) throw ConfigError("/modes", "only used by 'trajectory'");
    const json& m = doc["modes"];
    if (!m.is_array() || m.empty()) throw ConfigError("/modes", "expected a non-empty list");
    c.modes.clear();
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string p = "/modes/" + std::to_string(i);
      if (m[i] == "unitary") c.modes.push_back(ModeChoice::Unitary);
      else if (m[i] == "nonselective") c.modes.push_back(ModeChoice::Nonselective);
      else if (m[i] == "selective") c.modes.push_back(ModeChoice::Selective);
      else throw ConfigError(p, "expected \"unitary\", \"nonselective\" or \"selective\"");
    }
  }
  if (doc.contains("axis")) {
    const json& a = doc["axis"];
    if (!a.is_array() || a.size() != 3) throw ConfigError("/axis", "expected three numbers");
    for (std::size_t i = 0; i < 3; ++i) c.axis[i] = detail::get_number(a[i], "/axis/" + std::to_string(i));
    const double n = std::sqrt(c.axis[0] * c.axis[0] + c.axis[1] * c.axis[1] + c.axis[2] * c.axis[2]);
    if (std::abs(n - 1.0) > 1e-12) throw ConfigError("/axis", "must be a unit vector");
  }
  if (doc.contains("omega")) {
    c.omega = detail::get_number(doc["omega"], "/omega");
    if (c.omega == 0.0) throw ConfigError("/omega", "must be non-zero");
  }
  if (doc.contains("steps")) {
    c.steps = detail::get_int(doc["steps"], "/steps");
    if (c.steps < 1) throw ConfigError("/steps", "must be >= 1");
  }
  if (doc.contains("dt")) {
    c.dt = detail::get_number(doc["dt"], "/dt");
    if (!(c.dt > 0)) throw ConfigError("/dt", "must be positive");
  }
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    if (c.experiment != Experiment::Lg) throw ConfigError("/sweep", "only used by 'lg'");
    if (!s.is_object()) throw ConfigError("/sweep", "expected an object");
    detail::reject_unknown(s, "/sweep", {"from", "to", "count"});
    if (s.contains("from")) c.sweep.from = detail::get_number(s["from"], "/sweep/from");
    if (s.contains("to")) c.sweep.to = detail::get_number(s["to"], "/sweep/to");
    if (s.contains("count")) c.sweep.count = detail::get_int(s["count"], "/sweep/count");
    if (c.sweep.count < 1) throw ConfigError("/sweep/count", "must be >= 1");
  }
  if (doc.contains("out")) {
    if (!doc["out"].is_string() || doc["out"].get<std::string>().empty())
      throw ConfigError("/out", "expected a non-empty string");
    c.out = doc["out"].get<std::string>();
  }

  const bool random_state = c.state.kind == StateKind::Random || c.state.kind == StateKind::BlockDiagonal;
  if (random_state && !c.seed)
    throw ConfigError("/seed", "required for state kind '" + detail::state_kind_name(c.state.kind) + "'");
  const bool selective = std::find(c.modes.begin(), c.modes.end(), ModeChoice::Selective) != c.modes.end();
  if (c.experiment == Experiment::Trajectory && selective && !c.seed)
    throw ConfigError("/seed", "required for trajectory mode 'selective'");
  if (c.state.kind == StateKind::Cat)
    for (std::size_t i = 0; i < c.j.size(); ++i)
      if (c.j[i].twice() < 1) throw ConfigError("/j", "cat state needs j >= 1/2");
  if (c.state.kind == StateKind::Dicke)
    for (SpinJ jj : c.j) {
      const double k = c.state.m + jj.value();
      if (std::abs(c.state.m) > jj.value() || std::abs(k - std::round(k)) > 1e-12)
        throw ConfigError("/state/m", "not a valid m for j = " + std::to_string(jj.value()));
    }
  if (c.experiment == Experiment::Trajectory && c.state.kind != StateKind::Coherent &&
      c.state.kind != StateKind::Superposition && c.state.kind != StateKind::Dicke)
    throw ConfigError("/state/kind", "trajectory needs a pure state (coherent, superposition or dicke)");
  if (c.experiment == Experiment::Slots && c.state.kind == StateKind::BlockDiagonal)
    throw ConfigError("/state/kind", "block_diagonal is tied to one partition; not available for slots");
  return c;
}

/// Fully resolved config, echoed into summary.json.
inline json config_to_json(const ExperimentConfig& c) {
  json j;
  j["experiment"] = experiment_name(c.experiment);
  json js = json::array();
  for (SpinJ s : c.j) js.push_back(s.value());
  j["j"] = js;
  if (!c.delta_m.empty()) {
    json rules = json::array();
    for (const auto& r : c.delta_m) rules.push_back(r.text);
    j["delta_m"] = rules;
    json resolved = json::object();
    for (SpinJ s : c.j) {
      json list = json::array();
      for (int d : c.delta_ms(s)) list.push_back(d);
      resolved[std::to_string(s.twice()) + "/2"] = list;
    }
    j["delta_m_resolved"] = resolved;
  }
  json st;
  st["kind"] = detail::state_kind_name(c.state.kind);
  st["theta"] = c.state.theta;
  st["phi"] = c.state.phi;
  st["theta2"] = c.state.theta2;
  st["phi2"] = c.state.phi2;
  st["m"] = c.state.m;
  st["count"] = c.state.count;
  j["state"] = st;
  j["grid_lmax"] = c.grid_lmax ? json(*c.grid_lmax) : json(nullptr);
  j["metric"] = c.metric == MetricChoice::L1 ? "L1" : "sup";
  j["seed"] = c.seed ? json(*c.seed) : json(nullptr);
  json modes = json::array();
  for (auto m : c.modes) modes.push_back(detail::mode_name(m));
  j["modes"] = modes;
  j["axis"] = c.axis;
  j["omega"] = c.omega;
  j["steps"] = c.steps;
  j["dt"] = c.dt;
  j["sweep"] = {{"from", c.sweep.from}, {"to", c.sweep.to}, {"count", c.sweep.count}};
  return j;
}

}  // namespace macrospin::cli
