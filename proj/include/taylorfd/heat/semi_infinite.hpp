#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "taylorfd/engine/engine.hpp"
#include "taylorfd/field/boundary.hpp"
#include "taylorfd/field/field.hpp"
#include "taylorfd/oracles/surface.hpp"

namespace taylorfd {

// Heat equation T_t = T_xx on [0, x_max] with T(0, t) = T_s(t), T(x_max, t) = 0
// and T(x, 0) = 0.
struct HeatProblem {
  SurfaceTemperature surface = SurfaceTemperature::constant(0.0);
  double x_max = 3.0;
  int n_cells = 150;
  int accuracy = 2;

  // x_max so that x_max / (2 sqrt(t_final)) >= 4; h = min(0.02, sqrt(dt)),
  // widened when that would make the explicit step unstable.
  static HeatProblem resolved(SurfaceTemperature surface, double t_final, double dt,
                              int accuracy = 2);

  double h() const { return x_max / n_cells; }
  Grid grid(int max_order) const;
  BoundarySet boundaries() const;
};

enum class HeatLevelMode {
  // level k = D2(level k-1), with level k-1 carrying d^{k-1}T_s/dt^{k-1} at x = 0
  Recursive,
  // level k = D_{2k} T directly
  Direct,
};

// Levels 1..q of the heat cascade, d^k T/dt^k = d^{2k} T/dx^{2k}.
std::vector<Field> heat_levels(const Field& temperature, int q, const BoundarySet& bc, double t,
                               int accuracy, HeatLevelMode mode = HeatLevelMode::Recursive);

// Engine adapter. Records -dT/dx at x = 0 (one-sided stencil) after every step.
struct HeatCascade {
  using State = Field;

  BoundarySet bc;
  int accuracy = 2;
  HeatLevelMode mode = HeatLevelMode::Recursive;
  std::vector<std::pair<double, double>> flux_history;  // (t, inflow)

  int max_order() const { return 5; }
  std::vector<Field> levels(const Field& temperature, double t, int q) const {
    return heat_levels(temperature, q, bc, t, accuracy, mode);
  }
  void enforce_boundary(Field& temperature, double t) const { enforce_dirichlet(temperature, bc, t); }
  void on_step_accepted(const Field& temperature, double t, double dt);
};

// Heat flowing into the domain, -dT/dx at x = 0, from a one-sided stencil.
double boundary_inflow(const Field& temperature, const BoundarySet& bc, double t, int accuracy);

struct HeatSolution {
  Field temperature;
  double t = 0.0;
  std::vector<double> times;
  std::vector<double> inflow;
  // T_s(0) != 0 while the initial field is zero.
  bool incompatible_start = false;
  double start_mismatch = 0.0;
};

// Restart-per-step Taylor marching from T = 0: the stack is rebuilt from the
// current field at every step.
HeatSolution multi_step_taylor_solution(const HeatProblem& problem, const StepControl& control,
                                        HeatLevelMode mode = HeatLevelMode::Recursive);

// Boundary gradient dT/dx at x = 0 from the truncated series
//   sum_{n=1..order} t^n/n! (d^{2n+1}T/dx^{2n+1})_0
// with the odd derivatives taken from the Duhamel kernels at x = 0. Only
// histories that vanish fast enough at tau = t give a finite value;
// otherwise DivergentIntegralError. Note the sign: heat into the domain is
// the negative of this value.
double taylor_flux(const SurfaceTemperature& ts, double t, int order);

// Closed-form deficiency of the first (order 1) and second (order 2) Taylor
// approximations of the Duhamel solution:
//   order 1: -(x/(4 sqrt t)) e^{-x^2/(4t)}
//   order 2: order 1 - (x/(16 sqrt t)) (5 + x^2/(2t)) e^{-x^2/(4t)}
double flux_error_estimate(double x, double t, int order);

struct FluxReport {
  double t = 0.0;
  // All values are heat into the domain.
  std::map<int, double> taylor;                 // marched solution, per order
  std::map<int, std::optional<double>> series;  // -taylor_flux, when convergent
  double duhamel = 0.0;                          // exact_flux
  double fractional = 0.0;                       // fractional_flux
  // Relative differences keyed by method names ("taylor1", "duhamel", ...).
  std::map<std::pair<std::string, std::string>, double> relative_differences;
};

FluxReport flux_report(const SurfaceTemperature& ts, double t, const std::vector<int>& orders,
                       double dt, int accuracy = 2);

}  // namespace taylorfd
