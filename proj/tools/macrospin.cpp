// macrospin <experiment> --config <file> [--out <dir>] [--threads N]

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include <macrospin/cli/runner.hpp>

namespace {

int default_threads() {
  if (const char* env = std::getenv("MACROSPIN_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1) return static_cast<int>(n);
    std::cerr << "warning: ignoring MACROSPIN_THREADS='" << env << "'\n";
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace macrospin;
  using namespace macrospin::cli;

  CLI::App app{"Coarse-grained spin measurement experiments"};
  app.footer(config_help());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  for (const auto& [name, kind] : experiment_names()) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides config 'out')");
    sub->add_option("--threads", threads, "worker threads (default: MACROSPIN_THREADS, else all cores)")
        ->check(CLI::PositiveNumber);
    sub->footer(config_help());
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  ExperimentConfig config;
  try {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) throw IoError("cannot read config '" + config_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    config = parse_config(text.str(), experiment_from_name(command));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigError& e) {
    std::cerr << config_path << ":" << e.what() << "\n";
    return kExitValidation;
  }
  if (!out_dir.empty()) config.out = out_dir;
  if (threads <= 0) threads = default_threads();

  try {
    const RunResult result = run(config, threads);
    write_artifacts(config.out, config, result);
    int passed = 0;
    for (const auto& c : result.checks) passed += c.passed;
    std::cout << command << ": " << result.files.size() << " artifact(s) in " << config.out << ", " << passed << "/"
              << result.checks.size() << " checks passed\n";
    for (const auto& c : result.checks)
      if (!c.passed)
        std::cout << "  FAIL " << c.name << ": " << csv::number(c.value) << " not " << c.relation << " "
                  << csv::number(c.bound) << "\n";
    return kExitOk;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  }
}
