// tsfd: run, sweep and validate Taylor-series experiments from JSON configs.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "taylorfd/engine/engine.hpp"
#include "taylorfd/harness/config.hpp"
#include "taylorfd/harness/runner.hpp"

using namespace taylorfd;

namespace {

constexpr int kConfigError = 2;
constexpr int kInstability = 3;
constexpr int kOracleMismatch = 4;

// Writes to --out, else to the config's output path, else stdout.
template <class Fn>
void emit(const std::string& out_flag, const std::string& config_out, Fn&& write) {
  const std::string path = out_flag.empty() ? config_out : out_flag;
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  write(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taylor-series time marching experiments"};
  app.require_subcommand(1);
  std::string config_path, out_path;
  bool strict = false, full = false;
  int halvings = 3;

  auto* run = app.add_subcommand("run", "march every configured order and write the CSV");
  run->add_option("--config", config_path, "JSON experiment config")->required();
  run->add_option("--out", out_path, "CSV path (overrides the config's output)");
  run->add_flag("--strict", strict, "exit 4 when an oracle differs by more than oracle_tolerance");
  run->add_flag("--full-precision", full, "17 significant digits instead of 6");

  auto* sweep = app.add_subcommand("sweep", "fit temporal orders over dt, dt/2, ...");
  sweep->add_option("--config", config_path, "JSON experiment config")->required();
  sweep->add_option("--out", out_path, "report path");
  sweep->add_option("--halve-dt", halvings, "number of halvings (>= 2)")->check(CLI::Range(2, 12));

  auto* validate = app.add_subcommand("validate", "oracle-equivalence suite");
  validate->add_option("--out", out_path, "report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kConfigError;
  }

  try {
    if (*run) {
      const ExperimentConfig cfg = load_config(config_path);
      const RunReport report = run_experiment(cfg);
      emit(out_path, cfg.output, [&](std::ostream& os) { write_csv(report, os, full); });
      for (const auto& [q, s] : report.seconds) std::cerr << "order " << q << ": " << s << " s\n";
      for (const auto& [q, d] : report.oracle_delta) {
        std::cerr << "order " << q << ": max |value - oracle| = " << d << '\n';
      }
      for (const auto& [k, v] : report.diagnostics) std::cerr << k << " = " << v << '\n';
      if (strict && !report.oracle_within(cfg.oracle_tolerance)) {
        std::cerr << "oracle mismatch beyond " << cfg.oracle_tolerance << '\n';
        return kOracleMismatch;
      }
    } else if (*sweep) {
      const ExperimentConfig cfg = load_config(config_path);
      const SweepReport report = run_sweep(cfg, halvings);
      emit(out_path, "", [&](std::ostream& os) { write_sweep(report, os); });
    } else {
      const auto checks = run_validation();
      emit(out_path, "", [&](std::ostream& os) { write_validation(checks, os); });
      for (const auto& c : checks) {
        if (!c.pass) return kOracleMismatch;
      }
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InstabilityError& e) {
    std::cerr << "instability: " << e.what() << '\n';
    return kInstability;
  }
  return 0;
}
