#include "taylorfd/heat/semi_infinite.hpp"

#include <cmath>
#include <stdexcept>

#include "taylorfd/field/derivative.hpp"
#include "taylorfd/field/stencil.hpp"
#include "taylorfd/oracles/heat_oracles.hpp"
#include "taylorfd/oracles/quadrature.hpp"

namespace taylorfd {

HeatProblem HeatProblem::resolved(SurfaceTemperature surface, double t_final, double dt,
                                  int accuracy) {
  if (!(t_final > 0.0) || !(dt > 0.0)) throw std::invalid_argument("t_final and dt must be > 0");
  HeatProblem p;
  p.surface = std::move(surface);
  p.accuracy = accuracy;
  p.x_max = std::max(1.0, 8.0 * std::sqrt(t_final));
  // h <= sqrt(dt) is preferred near the wall, but an explicit step needs
  // dt * rho(D2) <= 2. Widen h to the stable value (with 10% margin) when
  // the two clash.
  const auto& w = central_stencil(2, accuracy).weights;
  double radius = 0.0;
  for (double v : w) radius += std::abs(v);
  const double stable = 1.1 * std::sqrt(dt * radius / 2.0);
  const double h = std::max(std::min(0.02, std::sqrt(dt)), stable);
  p.n_cells = static_cast<int>(std::ceil(p.x_max / h));
  return p;
}

Grid HeatProblem::grid(int max_order) const {
  return Grid::line(0.0, x_max, n_cells, required_ghost_width(2 * max_order, accuracy));
}

BoundarySet HeatProblem::boundaries() const {
  BoundarySet bc;
  const SurfaceTemperature ts = surface;
  bc.set(0, Face::Lower, BoundaryCondition::dirichlet([ts](const Point&, double t, int level) {
    return ts.derivative(t, level);
  }));
  bc.set(0, Face::Upper, BoundaryCondition::dirichlet(0.0));
  return bc;
}

std::vector<Field> heat_levels(const Field& temperature, int q, const BoundarySet& bc, double t,
                               int accuracy, HeatLevelMode mode) {
  std::vector<Field> out;
  out.reserve(q);
  const Field base = fill_ghosts(temperature, bc, t, 0);
  if (mode == HeatLevelMode::Direct) {
    for (int k = 1; k <= q; ++k) out.push_back(apply_derivative(base, 2 * k, 0, accuracy));
    return out;
  }
  const Field* prev = &base;
  for (int k = 1; k <= q; ++k) {
    out.push_back(fill_ghosts(apply_derivative(*prev, 2, 0, accuracy), bc, t, k));
    prev = &out.back();
  }
  return out;
}

double boundary_inflow(const Field& temperature, const BoundarySet& bc, double t, int accuracy) {
  const Field filled = fill_ghosts(temperature, bc, t, 0);
  return -apply_derivative(filled, 1, 0, accuracy)(0);
}

void HeatCascade::on_step_accepted(const Field& temperature, double t, double) {
  flux_history.emplace_back(t, boundary_inflow(temperature, bc, t, accuracy));
}

HeatSolution multi_step_taylor_solution(const HeatProblem& problem, const StepControl& control,
                                        HeatLevelMode mode) {
  HeatCascade cascade{problem.boundaries(), problem.accuracy, mode, {}};
  Field initial(problem.grid(control.order), Quantity::Temperature, 0.0);
  HeatSolution out;
  out.start_mismatch = problem.surface(0.0);
  out.incompatible_start = out.start_mismatch != 0.0;
  // The boundary node takes T_s(0); the interior stays at zero.
  enforce_dirichlet(initial, cascade.bc, 0.0);
  auto result = march(cascade, std::move(initial), control);
  out.temperature = std::move(result.state);
  out.t = result.t;
  for (const auto& [t, q] : cascade.flux_history) {
    out.times.push_back(t);
    out.inflow.push_back(q);
  }
  return out;
}

double taylor_flux(const SurfaceTemperature& ts, double t, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("taylor_flux order must be 1..3");
  if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
  double acc = 0.0;
  double c = 1.0;
  for (int n = 1; n <= order; ++n) {
    c = c * t / n;
    acc += c * spatial_derivative_integral(ts, 0.0, t, 2 * n + 1);
  }
  return acc;
}

double flux_error_estimate(double x, double t, int order) {
  if (order < 1 || order > 2) throw std::invalid_argument("error estimate order must be 1 or 2");
  if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
  const double e = std::exp(-x * x / (4.0 * t));
  const double st = std::sqrt(t);
  double dt = -(x / (4.0 * st)) * e;
  if (order == 2) dt -= (x / (16.0 * st)) * (5.0 + x * x / (2.0 * t)) * e;
  return dt + 0.0;
}

FluxReport flux_report(const SurfaceTemperature& ts, double t, const std::vector<int>& orders,
                       double dt, int accuracy) {
  FluxReport r;
  r.t = t;
  r.duhamel = exact_flux(ts, t);
  r.fractional = fractional_flux(ts, t);
  std::map<std::string, double> values{{"duhamel", r.duhamel}, {"fractional", r.fractional}};
  const int steps = static_cast<int>(std::lround(t / dt));
  for (int q : orders) {
    HeatProblem p = HeatProblem::resolved(ts, t, dt, accuracy);
    StepControl c;
    c.dt = t / steps;
    c.n_steps = steps;
    c.order = q;
    // Without time derivatives of T_s the recursive levels have no wall data.
    const auto sol = multi_step_taylor_solution(
        p, c, ts.has_derivatives() ? HeatLevelMode::Recursive : HeatLevelMode::Direct);
    r.taylor[q] = sol.inflow.empty() ? 0.0 : sol.inflow.back();
    values["taylor" + std::to_string(q)] = r.taylor[q];
    try {
      r.series[q] = q <= 3 ? std::optional<double>(-taylor_flux(ts, t, q)) : std::nullopt;
    } catch (const DivergentIntegralError&) {
      r.series[q] = std::nullopt;
    }
  }
  for (auto a = values.begin(); a != values.end(); ++a) {
    for (auto b = std::next(a); b != values.end(); ++b) {
      const double scale = std::max(std::abs(a->second), std::abs(b->second));
      r.relative_differences[{a->first, b->first}] =
          scale > 0.0 ? std::abs(a->second - b->second) / scale : 0.0;
    }
  }
  return r;
}

}  // namespace taylorfd
