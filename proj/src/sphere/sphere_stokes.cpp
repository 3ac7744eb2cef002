#include "taylorfd/sphere/sphere_stokes.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "taylorfd/field/derivative.hpp"

namespace taylorfd {

SphereSurface exponential_surface(double rate) {
  return [rate](double theta, double tau, int level) {
    return std::pow(rate, level) * std::abs(std::cos(theta)) * std::exp(rate * tau);
  };
}

void SphereProblem::validate() const {
  if (!(pe >= 0.0)) throw std::invalid_argument("Pe must be >= 0");
  if (!(rho_max > 1.0)) throw std::invalid_argument("rho_max must exceed 1");
  if (n_rho < 2 || n_theta < 2) throw std::invalid_argument("need at least 2 cells per axis");
  if (accuracy < 2 || accuracy % 2) throw std::invalid_argument("accuracy must be even and >= 2");
  if (!surface) throw std::invalid_argument("surface temperature is missing");
}

SphericalGrid2D SphereProblem::grid() const {
  return SphericalGrid2D(rho_max, n_rho, n_theta, required_ghost_width(2, accuracy));
}

BoundarySet SphereProblem::boundaries() const {
  BoundarySet bc;
  const SphereSurface ts = surface;
  bc.set(0, Face::Lower, BoundaryCondition::dirichlet([ts](const Point& p, double tau, int level) {
    return ts(p[1], tau, level);
  }));
  bc.set(0, Face::Upper, BoundaryCondition::dirichlet(0.0));
  bc.set_axis(1, BoundaryCondition::symmetry());
  return bc;
}

namespace {

struct Coefficients {
  Field a_rho, a_theta, b_theta;
};

Coefficients coefficients(const SphereProblem& p) {
  const SphericalGrid2D sg = p.grid();
  const Grid& g = sg.grid();
  Coefficients c{Field(g), Field(g), Field(g)};
  const int nt = sg.n_theta();
  c.a_rho.for_each_node([&](int i, int j, int) {
    const double r = sg.rho(i), th = sg.theta(j);
    const bool pole = j == 0 || j == nt;
    const double s = pole ? 0.0 : std::sin(th);
    const double r3 = r * r * r;
    c.a_rho(i, j) = 2.0 / r - 0.5 * p.pe * std::cos(th) * (1.0 - 1.5 / r + 0.5 / r3);
    const double conv = p.pe * s / (2.0 * r) * (1.0 - 0.75 / r - 0.25 / r3);
    // cot th T_th -> T_thth on the axis.
    c.a_theta(i, j) = pole ? conv : std::cos(th) / s / (r * r) + conv;
    c.b_theta(i, j) = (pole ? 2.0 : 1.0) / (r * r);
  });
  return c;
}

Field evaluate(const Field& T, const Field& a_rho, const Field& a_theta, const Field& b_theta,
               int p) {
  const Field t_r = apply_derivative(T, 1, 0, p);
  const Field t_rr = apply_derivative(T, 2, 0, p);
  const Field t_th = apply_derivative(T, 1, 1, p);
  const Field t_thth = apply_derivative(T, 2, 1, p);
  Field out(T.grid(), Quantity::Temperature);
  out.for_each_node([&](int i, int j, int) {
    out(i, j) = t_rr(i, j) + a_rho(i, j) * t_r(i, j) + b_theta(i, j) * t_thth(i, j) +
                a_theta(i, j) * t_th(i, j);
  });
  return out;
}

}  // namespace

Field sphere_rhs(const Field& T, const SphereProblem& problem) {
  const Coefficients c = coefficients(problem);
  return evaluate(T, c.a_rho, c.a_theta, c.b_theta, problem.accuracy);
}

SphereCascade::SphereCascade(SphereProblem problem)
    : problem_(std::move(problem)) {
  problem_.validate();
  bc_ = problem_.boundaries();
  Coefficients c = coefficients(problem_);
  a_rho_ = std::move(c.a_rho);
  a_theta_ = std::move(c.a_theta);
  b_theta_ = std::move(c.b_theta);
}

Field SphereCascade::apply(const Field& T, double tau, int level) const {
  return evaluate(fill_ghosts(T, bc_, tau, level), a_rho_, a_theta_, b_theta_, problem_.accuracy);
}

std::vector<Field> SphereCascade::levels(const Field& T, double tau, int q) const {
  std::vector<Field> out;
  out.reserve(q);
  const Field* prev = &T;
  for (int k = 1; k <= q; ++k) {
    Field g = apply(*prev, tau, k - 1);
    enforce_dirichlet(g, bc_, tau, k);
    out.push_back(std::move(g));
    prev = &out.back();
  }
  return out;
}

Field sphere_initial(const SphereCascade& cascade, double tau) {
  Field T(cascade.problem().grid().grid(), Quantity::Temperature, 0.0);
  enforce_dirichlet(T, cascade.boundaries(), tau);
  return T;
}

Field sphere_euler_step(const SphereCascade& cascade, const Field& T, double tau, double dt) {
  Field next = T;
  next.add_scaled(cascade.apply(T, tau, 0), dt);
  cascade.enforce_boundary(next, tau + dt);
  return next;
}

double sphere_sample(const Field& T, const SphericalGrid2D& grid, double r, double theta) {
  if (theta > std::numbers::pi) theta = 2.0 * std::numbers::pi - theta;
  if (r < 1.0 || r > grid.rho_max() || theta < 0.0 || theta > std::numbers::pi) {
    throw std::out_of_range("sample point outside the grid");
  }
  auto locate = [](double x, double x0, double h, int n, int& i) {
    const double s = (x - x0) / h;
    const double near = std::round(s);
    // Snap lattice points that sit on a node up to rounding.
    if (std::abs(s - near) < 1e-9) {
      i = static_cast<int>(near);
      return 0.0;
    }
    i = std::min(static_cast<int>(std::floor(s)), n - 1);
    return s - i;
  };
  int i = 0, j = 0;
  const double fr = locate(r, 1.0, grid.h_rho(), grid.n_rho(), i);
  const double ft = locate(theta, 0.0, grid.h_theta(), grid.n_theta(), j);
  auto at = [&](int a, int b) { return T(std::min(a, grid.n_rho()), std::min(b, grid.n_theta())); };
  const double v0 = fr == 0.0 ? at(i, j) : (1 - fr) * at(i, j) + fr * at(i + 1, j);
  if (ft == 0.0) return v0;
  const double v1 = fr == 0.0 ? at(i, j + 1) : (1 - fr) * at(i, j + 1) + fr * at(i + 1, j + 1);
  return (1 - ft) * v0 + ft * v1;
}

int TableCase::steps() const {
  if (!(dt > 0.0) || !(tau_end >= 0.0)) throw std::invalid_argument("dt must be > 0, tau_end >= 0");
  const double n = tau_end / dt;
  const double r = std::round(n);
  if (std::abs(n - r) > 1e-9 * std::max(1.0, n)) {
    throw std::invalid_argument("tau_end must be a whole number of steps");
  }
  return static_cast<int>(r);
}

std::vector<double> TableCase::output_angles() const {
  if (!angles.empty()) return angles;
  std::vector<double> out;
  for (int k = 0; k < 8; ++k) out.push_back(k * std::numbers::pi / 5.0);
  return out;
}

TableResult run_table_case(const TableCase& config) {
  SphereCascade cascade(config.problem);
  const SphericalGrid2D sg = config.problem.grid();
  TableResult out;
  out.radii = config.radii;
  out.angles = config.output_angles();
  const int n = config.steps();
  for (int q : config.orders) {
    if (q < 1 || q > cascade.max_order()) throw std::invalid_argument("order out of range 1..5");
    StepControl control;
    control.dt = config.dt;
    control.n_steps = n;
    control.order = q;
    const auto start = std::chrono::steady_clock::now();
    auto run = march(cascade, sphere_initial(cascade), control);
    out.seconds[q] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.tau = run.t;
    auto& table = out.values[q];
    for (double r : out.radii) {
      auto& row = table.emplace_back();
      for (double th : out.angles) row.push_back(sphere_sample(run.state, sg, r, th));
    }
    out.fields.emplace(q, std::move(run.state));
  }
  return out;
}

}  // namespace taylorfd
