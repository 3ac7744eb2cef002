#include "taylorfd/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>

#include "taylorfd/engine/engine.hpp"
#include "taylorfd/field/boundary.hpp"
#include "taylorfd/heat/semi_infinite.hpp"
#include "taylorfd/ns/navier_stokes.hpp"
#include "taylorfd/oracles/heat_oracles.hpp"
#include "taylorfd/poisson/poisson.hpp"
#include "taylorfd/problems/advection.hpp"
#include "taylorfd/problems/burgers.hpp"
#include "taylorfd/sphere/sphere_stokes.hpp"

namespace taylorfd {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Outcome {
  std::vector<CsvRow> rows;
  std::vector<std::optional<double>> oracle;  // per row
  std::map<std::string, double> diagnostics;
};

// Linear interpolation on a 1-D field; periodic grids wrap.
double sample_line(const Field& f, double x) {
  const Axis& a = f.grid().axis(0);
  const double h = a.spacing();
  if (a.periodic) {
    x = std::fmod(x - a.min, a.max - a.min);
    if (x < 0) x += a.max - a.min;
    x += a.min;
  } else if (x < a.min - 1e-12 || x > a.max + 1e-12) {
    throw ConfigError("output point outside the domain");
  }
  const double s = (x - a.min) / h;
  const double near = std::round(s);
  const int n = a.n_nodes();
  if (std::abs(s - near) < 1e-9) return f(static_cast<int>(near) % n);
  const int i = static_cast<int>(std::floor(s));
  const double w = s - i;
  return (1 - w) * f(i % n) + w * f((i + 1) % n);
}

std::vector<double> line_points(const Field& f, const ExperimentConfig& c) {
  if (!c.output_x.empty()) return c.output_x;
  std::vector<double> out;
  for (int i = 0; i < f.grid().n_nodes(0); ++i) out.push_back(f.grid().coordinates(i)[0]);
  return out;
}

StepControl control_for(int q, double dt, int n) {
  StepControl s;
  s.dt = dt;
  s.n_steps = n;
  s.order = q;
  return s;
}

void line_rows(Outcome& o, const Field& f, const ExperimentConfig& c, int q, double t,
               const std::function<std::optional<double>(double)>& exact) {
  for (double x : line_points(f, c)) {
    o.rows.push_back({q, t, x, std::nullopt, sample_line(f, x)});
    o.oracle.push_back(exact ? exact(x) : std::nullopt);
  }
}

Outcome run_advection(const ExperimentConfig& c, int q, double dt, int n) {
  AdvectionProblem p;
  p.accuracy = c.accuracy;
  const int ghost = required_ghost_width(1, c.accuracy);
  Field u;
  std::function<double(double)> u0;
  if (c.initial == "sin") {
    p.bc.set_axis(0, BoundaryCondition::periodic());
    u0 = [](double x) { return std::sin(x); };
    u = Field::sample(Grid::line(0.0, kTwoPi, c.n_cells, ghost, true),
                      [&](const Point& x) { return u0(x[0]); });
  } else {
    const double x0 = c.x_min;
    p.bc.set(0, Face::Lower, BoundaryCondition::dirichlet([x0](const Point&, double t, int k) {
      return k == 0 ? x0 + t : (k == 1 ? 1.0 : 0.0);
    }));
    p.bc.set(0, Face::Upper, BoundaryCondition::one_sided());
    u0 = [](double x) { return x; };
    u = Field::sample(Grid::line(c.x_min, c.x_max, c.n_cells, ghost),
                      [&](const Point& x) { return u0(x[0]); });
  }
  const auto run = march(p, u, control_for(q, dt, n));
  Outcome o;
  line_rows(o, run.state, c, q, run.t, [&](double x) { return u0(x + run.t); });
  return o;
}

Outcome run_burgers(const ExperimentConfig& c, int q, double dt, int n) {
  BurgersProblem p;
  p.nu = c.nu;
  p.accuracy = c.accuracy;
  const int ghost = required_ghost_width(2, c.accuracy);
  Field u;
  if (c.initial == "sin") {
    p.bc.set_axis(0, BoundaryCondition::periodic());
    u = Field::sample(Grid::line(0.0, kTwoPi, c.n_cells, ghost, true),
                      [](const Point& x) { return std::sin(x[0]); });
  } else {
    p.bc.set_axis(0, BoundaryCondition::one_sided());
    u = Field(Grid::line(c.x_min, c.x_max, c.n_cells, ghost), Quantity::Generic, c.initial_value);
  }
  const auto run = march(p, u, control_for(q, dt, n));
  Outcome o;
  std::function<std::optional<double>(double)> exact;
  if (c.initial == "constant") exact = [&](double) { return std::optional<double>(c.initial_value); };
  line_rows(o, run.state, c, q, run.t, exact);
  return o;
}

SurfaceTemperature surface_of(const ExperimentConfig& c) {
  if (c.surface == "constant") return SurfaceTemperature::constant(c.surface_params.at(0));
  if (c.surface == "polynomial") return SurfaceTemperature::polynomial(c.surface_params);
  return SurfaceTemperature::exponential(c.surface_params.at(0), c.surface_params.at(1));
}

HeatProblem heat_problem(const ExperimentConfig& c) {
  // The grid is fixed by the configured dt and end time so that a dt sweep
  // only changes the time step.
  if (c.x_max == 0.0) return HeatProblem::resolved(surface_of(c), c.final_time(), c.dt, c.accuracy);
  HeatProblem p;
  p.surface = surface_of(c);
  p.x_max = c.x_max;
  p.n_cells = c.n_cells;
  p.accuracy = c.accuracy;
  return p;
}

Outcome run_heat(const ExperimentConfig& c, int q, double dt, int n) {
  const HeatProblem p = heat_problem(c);
  const HeatSolution s = multi_step_taylor_solution(p, control_for(q, dt, n));
  Outcome o;
  std::function<std::optional<double>(double)> exact;
  if (c.oracle && s.t > 0.0) {
    const SurfaceTemperature ts = p.surface;
    exact = [ts, t = s.t](double x) { return std::optional<double>(duhamel_solution(ts, x, t)); };
  }
  line_rows(o, s.temperature, c, q, s.t, exact);
  if (!s.inflow.empty()) o.diagnostics["boundary_inflow"] = s.inflow.back();
  return o;
}

Outcome run_vortex(const ExperimentConfig& c, int q, double dt, int n) {
  NSContext ctx;
  ctx.props = {c.rho, c.mu, c.lambda, c.c};
  ctx.bc = periodic_box(2);
  NavierStokesProblem p(ctx, c.poisson_tolerance);
  const auto run = march(p, taylor_green_state(c.n_cells, c.amplitude), control_for(q, dt, n));
  Outcome o;
  const Field& T = run.state.T;
  T.for_each_node([&](int i, int j, int) {
    const Point x = T.grid().coordinates(i, j);
    o.rows.push_back({q, run.t, x[0], x[1], T(i, j)});
    o.oracle.push_back(std::nullopt);
  });
  o.diagnostics["max_divergence"] = max_divergence(run.state, ctx.bc);
  if (n > 0) o.diagnostics["poisson_residual"] = p.last_solve.residual;
  return o;
}

Outcome run_sphere(const ExperimentConfig& c, int q, double dt, int n) {
  TableCase tc;
  tc.problem.pe = c.pe;
  tc.problem.rho_max = c.rho_max;
  tc.problem.n_rho = c.n_rho;
  tc.problem.n_theta = c.n_theta;
  tc.problem.accuracy = c.accuracy;
  tc.problem.surface = exponential_surface(c.surface_rate);
  tc.dt = dt;
  tc.tau_end = n * dt;
  tc.orders = {q};
  tc.radii = c.radii;
  tc.angles = c.angles;
  const TableResult r = run_table_case(tc);
  Outcome o;
  const auto& table = r.values.at(q);
  for (std::size_t ir = 0; ir < r.radii.size(); ++ir)
    for (std::size_t ia = 0; ia < r.angles.size(); ++ia) {
      o.rows.push_back({q, r.tau, r.radii[ir], r.angles[ia], table[ir][ia]});
      // Only the sphere itself has a closed form.
      o.oracle.push_back(r.radii[ir] == 1.0 ? std::optional<double>(std::exp(c.surface_rate * r.tau) *
                                                                     std::abs(std::cos(r.angles[ia])))
                                            : std::nullopt);
    }
  return o;
}

Outcome run_once(const ExperimentConfig& c, int q, double dt, int n) {
  if (c.problem == "advection") return run_advection(c, q, dt, n);
  if (c.problem == "burgers") return run_burgers(c, q, dt, n);
  if (c.problem == "heat-semiinfinite") return run_heat(c, q, dt, n);
  if (c.problem == "navier-stokes-2d") return run_vortex(c, q, dt, n);
  return run_sphere(c, q, dt, n);
}

bool has_analytic(const ExperimentConfig& c) {
  return c.problem == "advection" || c.problem == "heat-semiinfinite" ||
         (c.problem == "burgers" && c.initial == "constant");
}

}  // namespace

bool RunReport::oracle_within(double tolerance) const {
  for (const auto& [q, d] : oracle_delta) {
    if (!(d <= tolerance)) return false;
  }
  return true;
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  RunReport report;
  report.problem = config.problem;
  const int n = config.steps();
  for (int q : config.orders) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o = run_once(config, q, config.dt, n);
    report.seconds[q] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (config.oracle) {
      double worst = -1.0;
      for (std::size_t i = 0; i < o.rows.size(); ++i) {
        if (o.oracle[i]) worst = std::max(worst, std::abs(o.rows[i].value - *o.oracle[i]));
      }
      if (worst >= 0.0) report.oracle_delta[q] = worst;
    }
    for (const auto& [k, v] : o.diagnostics) report.diagnostics[k + "_order" + std::to_string(q)] = v;
    report.rows.insert(report.rows.end(), o.rows.begin(), o.rows.end());
  }
  return report;
}

void write_csv(const RunReport& report, std::ostream& out, bool full_precision) {
  const char* fmt = full_precision ? "%.17g" : "%.6g";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, fmt, v);
    return std::string(buf);
  };
  out << "problem,order,tau,r_or_x,theta,value\n";
  for (const auto& r : report.rows) {
    out << report.problem << ',' << r.order << ',' << num(r.tau) << ',' << num(r.r_or_x) << ','
        << (r.theta ? num(*r.theta) : std::string()) << ',' << num(r.value) << '\n';
  }
}

double fitted_slope(const std::vector<double>& dt, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(dt.size());
  for (std::size_t i = 0; i < dt.size(); ++i) {
    const double x = std::log(dt[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SweepReport run_sweep(const ExperimentConfig& config, int halvings) {
  config.validate();
  if (halvings < 2) throw ConfigError("a sweep needs at least 2 halvings");
  const int n = config.steps();
  if (n == 0) throw ConfigError("a sweep needs at least one step");
  SweepReport report;
  report.problem = config.problem;
  const bool analytic =
      config.reference == "analytic" || (config.reference == "auto" && has_analytic(config));
  if (config.reference == "analytic" && !has_analytic(config)) {
    throw ConfigError("no analytic solution for this configuration");
  }
  report.reference = analytic ? "analytic" : "finest";

  ExperimentConfig c = config;
  c.oracle = analytic;
  std::vector<double> reference;
  if (!analytic) {
    int top = 1;
    for (int q : config.orders) top = std::max(top, q);
    const int f = 1 << (halvings + 2);
    for (const auto& r : run_once(c, top, config.dt / f, n * f).rows) reference.push_back(r.value);
  }
  double scale = 0.0;
  for (int q : config.orders) {
    SweepEntry e;
    e.order = q;
    for (int m = 0; m <= halvings; ++m) {
      const int f = 1 << m;
      const Outcome o = run_once(c, q, config.dt / f, n * f);
      double err = 0.0;
      for (std::size_t i = 0; i < o.rows.size(); ++i) {
        const double ref = analytic ? o.oracle[i].value_or(o.rows[i].value) : reference.at(i);
        err = std::max(err, std::abs(o.rows[i].value - ref));
        scale = std::max(scale, std::abs(ref));
      }
      e.dt.push_back(config.dt / f);
      e.error.push_back(err);
    }
    double worst = 0.0;
    for (double v : e.error) worst = std::max(worst, v);
    e.exact = worst <= 1e-12 * std::max(1.0, scale);
    if (!e.exact) {
      bool positive = true;
      for (double v : e.error) positive = positive && v > 0.0;
      if (positive) e.slope = fitted_slope(e.dt, e.error);
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

void write_sweep(const SweepReport& report, std::ostream& out) {
  char buf[128];
  out << "# " << report.problem << " temporal convergence, reference: " << report.reference << '\n';
  out << "order,dt,error\n";
  for (const auto& e : report.entries)
    for (std::size_t i = 0; i < e.dt.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%d,%.6g,%.6g\n", e.order, e.dt[i], e.error[i]);
      out << buf;
    }
  out << "order,slope\n";
  for (const auto& e : report.entries) {
    if (e.exact) {
      out << e.order << ",exact\n";
    } else if (e.slope) {
      std::snprintf(buf, sizeof buf, "%d,%.4f\n", e.order, *e.slope);
      out << buf;
    } else {
      out << e.order << ",undefined\n";
    }
  }
}

std::vector<ValidationCheck> run_validation() {
  std::vector<ValidationCheck> out;
  auto add = [&](std::string name, double value, double tol) {
    out.push_back({std::move(name), value, tol, value <= tol});
  };

  // Half-derivative flux against the Duhamel flux; (1 - tau)^2 vanishes at t = 1.
  {
    const auto ts = SurfaceTemperature::polynomial({1.0, -2.0, 1.0});
    const double a = fractional_flux(ts, 1.0), b = exact_flux(ts, 1.0);
    add("flux: fractional vs Duhamel, vanishing history", std::abs(a - b) / std::abs(b), 1e-6);
    const auto one = SurfaceTemperature::constant(1.0);
    double worst = 0.0;
    for (double t : {0.01, 0.1, 1.0}) {
      worst = std::max(worst, std::abs(exact_flux(one, t) - 1.0 / std::sqrt(std::numbers::pi * t)));
    }
    add("flux: regularized Duhamel vs 1/sqrt(pi t)", worst, 1e-8);
  }
  // Kernel derivatives against central differences of the solution one order down.
  {
    const auto ts = SurfaceTemperature::polynomial({0.0, 1.0, 0.5});
    const double t = 0.5, h = 1e-3;
    double worst = 0.0;
    for (double x : {0.2, 0.5, 1.0}) {
      const double fd = (duhamel_solution(ts, x + h, t) - duhamel_solution(ts, x - h, t)) / (2 * h);
      const double k1 = spatial_derivative_integral(ts, x, t, 1);
      worst = std::max(worst, std::abs(fd - k1) / std::max(std::abs(k1), 1e-12));
      for (int k = 2; k <= 4; ++k) {
        const double d = (spatial_derivative_integral(ts, x + h, t, k - 1) -
                          spatial_derivative_integral(ts, x - h, t, k - 1)) /
                         (2 * h);
        const double v = spatial_derivative_integral(ts, x, t, k);
        worst = std::max(worst, std::abs(d - v) / std::max(std::abs(v), 1e-3));
      }
    }
    add("kernels: d^k/dx^k vs differences of order k-1", worst, 1e-4);
  }
  // Gaussian moments.
  {
    double worst = 0.0;
    for (int m = 0; m <= 8; m += 2)
      for (double x : {0.1, 0.7, 2.0}) {
        worst = std::max(worst, std::abs(gaussian_moment(x, 0.3, m) - gaussian_moment_quadrature(x, 0.3, m)));
      }
    add("gaussian moments: closed form vs quadrature", worst, 1e-10);
  }
  // Manufactured Poisson on the unit square.
  {
    auto exact = [](double x, double y) { return std::sin(std::numbers::pi * x) * std::sinh(y) + x * y; };
    auto rhs = [](double x, double y) {
      return (1.0 - std::numbers::pi * std::numbers::pi) * std::sin(std::numbers::pi * x) * std::sinh(y);
    };
    std::vector<double> hs, errs;
    double recheck = 0.0;
    for (int n : {16, 32, 64}) {
      const Grid g({Axis{0, 1, n, false}, Axis{0, 1, n, false}}, 1);
      PoissonProblem p;
      p.rhs = Field::sample(g, [&](const Point& x) { return rhs(x[0], x[1]); });
      p.bc.set_axis(0, BoundaryCondition::dirichlet([&](const Point& x, double, int) { return exact(x[0], x[1]); }));
      p.bc.set_axis(1, BoundaryCondition::dirichlet([&](const Point& x, double, int) { return exact(x[0], x[1]); }));
      p.solver = PoissonSolver::ConjugateGradient;
      p.tolerance = 1e-11;
      const PoissonResult r = poisson_solve(p);
      double e = 0.0;
      r.pressure.for_each_node([&](int i, int j, int) {
        const Point x = g.coordinates(i, j);
        e = std::max(e, std::abs(r.pressure(i, j) - exact(x[0], x[1])));
      });
      hs.push_back(1.0 / n);
      errs.push_back(e);
      recheck = std::max(recheck, std::abs(r.recheck - r.residual));
    }
    add("poisson: |slope - 2|", std::abs(fitted_slope(hs, errs) - 2.0), 0.4);
    add("poisson: |residual - recheck|", recheck, 1e-12);
  }
  return out;
}

void write_validation(const std::vector<ValidationCheck>& checks, std::ostream& out) {
  char buf[256];
  for (const auto& c : checks) {
    std::snprintf(buf, sizeof buf, "%-4s %-50s %12.3e  (tol %.1e)\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.value, c.tolerance);
    out << buf;
  }
}

}  // namespace taylorfd
