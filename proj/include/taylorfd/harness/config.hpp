#pragma once

// Experiment configuration: a flat JSON object with typed keys. Every key is
// checked against the set allowed for the chosen problem; anything else is
// an error.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace taylorfd {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  // advection | burgers | heat-semiinfinite | navier-stokes-2d | sphere-stokes
  std::string problem;

  double dt = 1e-3;
  std::vector<int> orders{1};
  // Exactly one of the two; t_end must be a whole number of steps.
  std::optional<int> n_steps;
  std::optional<double> t_end;
  int accuracy = 2;

  // 1-D grids (advection, burgers, heat) and the square NS box.
  int n_cells = 64;
  double x_min = 0.0;
  double x_max = 1.0;

  // advection: linear | sin; burgers: constant | sin
  std::string initial = "linear";
  double initial_value = 1.0;
  double nu = 0.1;

  // heat: constant | polynomial | exponential, with surface_params
  // [c] | [a0, a1, ...] | [amplitude, rate]. x_max <= 0 picks the resolved grid.
  std::string surface = "constant";
  std::vector<double> surface_params{1.0};

  // sphere
  double pe = 1.0;
  double rho_max = 12.0;
  int n_rho = 220;
  int n_theta = 40;
  double surface_rate = 100.0;
  std::vector<double> radii{1.0, 2.0, 5.0, 8.0};
  std::vector<double> angles;  // empty: k pi / 5, k = 0..7

  // navier-stokes-2d (Taylor-Green vortex on [0, 2 pi)^2)
  double rho = 1.0;
  double mu = 0.01;
  double lambda = 0.01;
  double c = 1.0;
  double amplitude = 1.0;
  double poisson_tolerance = 1e-11;

  // 1-D output abscissae; empty means every node (every node of the box for NS).
  std::vector<double> output_x;

  bool oracle = false;
  double oracle_tolerance = 1e-2;
  // Sweep reference: auto | analytic | finest
  std::string reference = "auto";
  std::string output;  // CSV path, empty for stdout

  int steps() const;
  double final_time() const { return steps() * dt; }
  // Throws ConfigError on the first inconsistent field.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);
// Only the keys the problem accepts, full precision.
std::string serialize_config(const ExperimentConfig& config);

}  // namespace taylorfd
