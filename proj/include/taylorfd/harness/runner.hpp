#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "taylorfd/harness/config.hpp"

namespace taylorfd {

// One CSV row. For 1-D problems r_or_x is x and theta is absent; for the
// 2-D vortex r_or_x and theta hold x and y and the value is the temperature.
struct CsvRow {
  int order = 1;
  double tau = 0.0;
  double r_or_x = 0.0;
  std::optional<double> theta;
  double value = 0.0;

  bool operator==(const CsvRow&) const = default;
};

struct RunReport {
  std::string problem;
  std::vector<CsvRow> rows;
  std::map<int, double> seconds;  // wall time per order
  // max |value - oracle| over the output points, per order, when an oracle
  // exists for the configuration and oracle checks are on.
  std::map<int, double> oracle_delta;
  // e.g. "poisson_residual", "max_divergence" for the vortex.
  std::map<std::string, double> diagnostics;

  bool oracle_within(double tolerance) const;
};

// Runs every configured order. Throws InstabilityError (with order and
// step) when a march blows up.
RunReport run_experiment(const ExperimentConfig& config);

// header problem,order,tau,r_or_x,theta,value; %.6g or %.17g.
void write_csv(const RunReport& report, std::ostream& out, bool full_precision = false);

struct SweepEntry {
  int order = 1;
  std::vector<double> dt;
  std::vector<double> error;  // max abs over the output points
  std::optional<double> slope;  // empty when every error is at round-off
  bool exact = false;
};

struct SweepReport {
  std::string problem;
  std::string reference;  // "analytic" or "finest"
  std::vector<SweepEntry> entries;
};

// Runs dt, dt/2, ..., dt/2^halvings (halvings >= 2) per order and fits the
// observed temporal order against the analytic solution when one exists,
// else against the highest configured order run at dt/2^(halvings+2).
SweepReport run_sweep(const ExperimentConfig& config, int halvings);
void write_sweep(const SweepReport& report, std::ostream& out);

struct ValidationCheck {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Oracle-equivalence suite: fractional vs Duhamel flux, kernel derivatives
// vs differences of the Duhamel solution, Gaussian moments vs quadrature,
// manufactured Poisson.
std::vector<ValidationCheck> run_validation();
void write_validation(const std::vector<ValidationCheck>& checks, std::ostream& out);

// Least-squares slope of log(err) against log(dt).
double fitted_slope(const std::vector<double>& dt, const std::vector<double>& err);

}  // namespace taylorfd
