#include "taylorfd/ns/navier_stokes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "taylorfd/field/derivative.hpp"

namespace taylorfd {

void FluidProperties::validate() const {
  if (!(rho > 0.0 && mu > 0.0 && lambda > 0.0 && c > 0.0)) {
    throw std::invalid_argument("fluid properties must all be > 0");
  }
}

NSState& NSState::add_scaled(const NSState& x, double a) {
  for (std::size_t c = 0; c < v.size(); ++c) v[c].add_scaled(x.v[c], a);
  T.add_scaled(x.T, a);
  return *this;
}

bool NSState::all_finite() const {
  for (const auto& f : v) {
    if (!f.all_finite()) return false;
  }
  return T.all_finite();
}

double NSState::max_abs() const {
  double m = T.max_abs();
  for (const auto& f : v) m = std::max(m, f.max_abs());
  return m;
}

namespace {

using Vec = std::vector<Field>;
using Grad = std::vector<Vec>;  // grad[c][a] = d_a u_c

Field filled(const Field& f, const NSContext& ctx, int level) {
  return fill_ghosts(f, ctx.bc, ctx.t, level);
}

Vec gradient(const Field& f, const NSContext& ctx, int level) {
  const Field g = filled(f, ctx, level);
  Vec out;
  for (int a = 0; a < g.grid().dims(); ++a) out.push_back(apply_derivative(g, 1, a, ctx.accuracy));
  return out;
}

Grad gradients(const Vec& u, const NSContext& ctx, int level) {
  Grad out;
  for (const auto& f : u) out.push_back(gradient(f, ctx, level));
  return out;
}

Field lap(const Field& f, const NSContext& ctx, int level) {
  return laplacian(filled(f, ctx, level), ctx.accuracy);
}

// sum_j a_j d_j w, given the gradient of w.
Field advect(const Vec& a, const Vec& grad_w) {
  Field out(a.front().grid());
  for (std::size_t j = 0; j < a.size(); ++j) out.add_scaled(hadamard(a[j], grad_w[j]), 1.0);
  return out;
}

Field force_field(const NSContext& ctx, const Grid& g, int component, int level) {
  if (!ctx.force) return Field(g);
  return Field::sample(g, [&](const Point& p) { return ctx.force(p, ctx.t, component, level); });
}

Field form(const Grad& gu, const Grad& gw, const FluidProperties& props) {
  const int d = static_cast<int>(gu.size());
  Field out(gu[0][0].grid());
  for (int i = 0; i < d; ++i) out.add_scaled(hadamard(gu[i][i], gw[i][i]), 2.0);
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      out.add_scaled(hadamard(gu[i][j] + gu[j][i], gw[i][j] + gw[j][i]), 1.0);
    }
  }
  return out.scale(props.mu / (props.rho * props.c));
}

Grad plain_gradients(const Vec& u, int accuracy) {
  Grad out;
  for (const auto& f : u) {
    Vec g;
    for (int a = 0; a < f.grid().dims(); ++a) g.push_back(apply_derivative(f, 1, a, accuracy));
    out.push_back(std::move(g));
  }
  return out;
}

void check_shape(const NSState& s) {
  if (s.v.size() != static_cast<std::size_t>(s.grid().dims())) {
    throw std::invalid_argument("need one velocity component per grid axis");
  }
}

// v_t = F - grad p / rho, applied to a right-hand side vector.
Vec minus_pressure_gradient(const Vec& F, const Field& p, const NSContext& ctx, int level) {
  const Vec gp = gradient(p, ctx, level);
  Vec out = F;
  for (std::size_t c = 0; c < out.size(); ++c) out[c].add_scaled(gp[c], -1.0 / ctx.props.rho);
  return out;
}

NSLevel level1_from(NSRhs rhs, const Field& p, const NSContext& ctx) {
  NSLevel l;
  l.velocity = minus_pressure_gradient(rhs.F, p, ctx, 0);
  l.temperature = rhs.FT;
  l.F = std::move(rhs.F);
  l.FT = std::move(rhs.FT);
  return l;
}

Vec filled_all(const Vec& u, const NSContext& ctx, int level) {
  Vec out;
  for (const auto& f : u) out.push_back(filled(f, ctx, level));
  return out;
}

}  // namespace

Field dissipation_form(const std::vector<Field>& u, const std::vector<Field>& w,
                       const FluidProperties& props, int accuracy) {
  if (u.size() != w.size() || u.empty()) throw std::invalid_argument("dissipation needs matching vectors");
  return form(plain_gradients(u, accuracy), plain_gradients(w, accuracy), props);
}

Field dissipation_phi(const std::vector<Field>& v, const FluidProperties& props, int accuracy) {
  const Grad g = plain_gradients(v, accuracy);
  return form(g, g, props);
}

Field dissipation_phi1(const std::vector<Field>& F, const FluidProperties& props, int accuracy) {
  return dissipation_phi(F, props, accuracy);
}

Field dissipation_phi2(const std::vector<Field>& F1, const FluidProperties& props, int accuracy) {
  return dissipation_phi(F1, props, accuracy);
}

NSRhs ns_rhs(const NSState& s, const NSContext& ctx) {
  check_shape(s);
  const Grad gv = gradients(s.v, ctx, 0);
  NSRhs r;
  for (std::size_t c = 0; c < s.v.size(); ++c) {
    Field f = lap(s.v[c], ctx, 0).scale(ctx.props.nu());
    f.add_scaled(advect(s.v, gv[c]), -1.0);
    f.add_scaled(force_field(ctx, s.grid(), static_cast<int>(c), 0), 1.0);
    r.F.push_back(std::move(f));
  }
  r.FT = form(gv, gv, ctx.props);
  r.FT.add_scaled(lap(s.T, ctx, 0), ctx.props.kappa());
  r.FT.add_scaled(advect(s.v, gradient(s.T, ctx, 0)), -1.0);
  return r;
}

NSLevel ns_level1(const NSState& s, const NSContext& ctx, const Field& p) {
  return level1_from(ns_rhs(s, ctx), p, ctx);
}

NSLevel ns_level2(const NSState& s, const NSContext& ctx, const NSLevel& l1, const Field& p,
                  const Field& dp_dt) {
  check_shape(s);
  (void)p;
  const Vec& G = l1.velocity;
  const Grad gv = gradients(s.v, ctx, 0);
  const Grad gG = gradients(G, ctx, 1);
  NSLevel l;
  for (std::size_t c = 0; c < s.v.size(); ++c) {
    Field f = lap(G[c], ctx, 1).scale(ctx.props.nu());
    f.add_scaled(force_field(ctx, s.grid(), static_cast<int>(c), 1), 1.0);
    f.add_scaled(advect(G, gv[c]), -1.0);
    f.add_scaled(advect(s.v, gG[c]), -1.0);
    l.F.push_back(std::move(f));
  }
  l.velocity = minus_pressure_gradient(l.F, dp_dt, ctx, 1);

  Field phi1 = ctx.mode == NSCascadeMode::AsPrinted
                   ? form(gradients(l1.F, ctx, 1), gradients(l1.F, ctx, 1), ctx.props)
                   : form(gv, gG, ctx.props).scale(2.0);
  l.FT = std::move(phi1);
  l.FT.add_scaled(lap(l1.FT, ctx, 1), ctx.props.kappa());
  l.FT.add_scaled(advect(s.v, gradient(l1.FT, ctx, 1)), -1.0);
  l.FT.add_scaled(advect(G, gradient(s.T, ctx, 0)), -1.0);
  l.temperature = l.FT;
  return l;
}

NSLevel ns_level3(const NSState& s, const NSContext& ctx, const NSLevel& l1, const NSLevel& l2,
                  const Field& p, const Field& dp_dt, const Field& d2p_dt2) {
  check_shape(s);
  (void)p;
  (void)dp_dt;
  const Vec& G = l1.velocity;
  const Vec& H = l2.velocity;
  const Grad gv = gradients(s.v, ctx, 0);
  const Grad gG = gradients(G, ctx, 1);
  const Grad gH = gradients(H, ctx, 2);
  NSLevel l;
  for (std::size_t c = 0; c < s.v.size(); ++c) {
    Field f = force_field(ctx, s.grid(), static_cast<int>(c), 2);
    f.add_scaled(advect(H, gv[c]), -1.0);
    f.add_scaled(advect(G, gG[c]), -2.0);
    f.add_scaled(advect(s.v, gH[c]), -1.0);
    f.add_scaled(lap(H[c], ctx, 2), ctx.props.nu());
    l.F.push_back(std::move(f));
  }
  l.velocity = minus_pressure_gradient(l.F, d2p_dt2, ctx, 2);

  const Vec gT = gradient(s.T, ctx, 0);
  const Vec gFT = gradient(l1.FT, ctx, 1);
  if (ctx.mode == NSCascadeMode::AsPrinted) {
    l.FT = form(gradients(l2.F, ctx, 2), gradients(l2.F, ctx, 2), ctx.props);
    l.FT.add_scaled(advect(l2.F, gT), -1.0);
    l.FT.add_scaled(advect(l1.F, gFT), -2.0);
  } else {
    l.FT = form(gG, gG, ctx.props).scale(2.0);
    l.FT.add_scaled(form(gv, gH, ctx.props), 2.0);
    l.FT.add_scaled(advect(H, gT), -1.0);
    l.FT.add_scaled(advect(G, gFT), -2.0);
  }
  l.FT.add_scaled(lap(l2.FT, ctx, 2), ctx.props.kappa());
  l.FT.add_scaled(advect(s.v, gradient(l2.FT, ctx, 2)), -1.0);
  l.temperature = l.FT;
  return l;
}

PoissonResult ns_pressure(const std::vector<Field>& F, const NSContext& ctx,
                          const PoissonProblem& settings) {
  PoissonProblem pr = settings;
  pr.rhs = divergence(filled_all(F, ctx, 0), 2).scale(ctx.props.rho);
  pr.bc = ctx.bc;
  pr.stencil = LaplacianStencil::Wide;
  return poisson_solve(pr);
}

std::vector<Field> velocity_from_streamfunction(const Field& psi, const BoundarySet& bc) {
  if (psi.grid().dims() != 2) throw std::invalid_argument("streamfunction velocity is 2-D only");
  const Field f = fill_ghosts(psi, bc);
  Field vx = apply_derivative(f, 1, 1, 2);
  Field vy = apply_derivative(f, 1, 0, 2).scale(-1.0);
  vx.set_quantity(Quantity::VelocityX);
  vy.set_quantity(Quantity::VelocityY);
  return {std::move(vx), std::move(vy)};
}

BoundarySet periodic_box(int dims) {
  BoundarySet bc;
  for (int a = 0; a < dims; ++a) bc.set_axis(a, BoundaryCondition::periodic());
  return bc;
}

NSState taylor_green_state(int n, double amplitude, double T0, double dT) {
  const double L = 2.0 * std::numbers::pi;
  const Grid g({Axis{0.0, L, n, true}, Axis{0.0, L, n, true}}, 2);
  const Field psi = Field::sample(g, [&](const Point& p) { return amplitude * std::sin(p[0]) * std::sin(p[1]); });
  NSState s;
  s.v = velocity_from_streamfunction(psi, periodic_box(2));
  s.T = Field::sample(g, [&](const Point& p) { return T0 + dT * std::cos(p[0]) * std::cos(p[1]); },
                      Quantity::Temperature);
  return s;
}

void PressureHistory::push(Field p, double t) {
  layers_.emplace_front(std::move(p), t);
  while (layers_.size() > 2) layers_.pop_back();
}

Field PressureHistory::first_derivative(const Field& p_now, double t_now) const {
  if (layers_.empty()) throw CascadeError("level 2 needs one stored pressure layer");
  const auto& [p1, t1] = layers_[0];
  return (p_now - p1).scale(1.0 / (t_now - t1));
}

Field PressureHistory::second_derivative(const Field& p_now, double t_now) const {
  if (layers_.size() < 2) throw CascadeError("level 3 needs two stored pressure layers");
  const auto& [p1, t1] = layers_[0];
  const auto& [p2, t2] = layers_[1];
  const double d1 = t_now - t1, d2 = t1 - t2;
  Field a = (p_now - p1).scale(1.0 / d1);
  a.add_scaled(p1 - p2, -1.0 / d2);
  return a.scale(2.0 / (d1 + d2));
}

NavierStokesProblem::NavierStokesProblem(NSContext c, double poisson_tolerance) : ctx(std::move(c)) {
  ctx.props.validate();
  if (ctx.accuracy != 2) {
    throw std::invalid_argument("the projected Navier-Stokes step uses second-order central differences");
  }
  poisson.solver = PoissonSolver::ConjugateGradient;
  poisson.tolerance = poisson_tolerance;
  poisson.stencil = LaplacianStencil::Wide;
}

std::vector<NSState> NavierStokesProblem::levels(const NSState& s, double t, int q) {
  NSContext c = ctx;
  c.t = t;
  NSRhs rhs = ns_rhs(s, c);
  last_solve = ns_pressure(rhs.F, c, poisson);
  const Field& p = last_solve.pressure;
  last_pressure = p;
  pending_t_ = t;

  std::vector<NSState> out;
  const NSLevel l1 = level1_from(std::move(rhs), p, c);
  out.push_back({l1.velocity, l1.temperature});
  if (q < 2) return out;
  const Field dp = history.first_derivative(p, t);
  const NSLevel l2 = ns_level2(s, c, l1, p, dp);
  out.push_back({l2.velocity, l2.temperature});
  if (q < 3) return out;
  const NSLevel l3 = ns_level3(s, c, l1, l2, p, dp, history.second_derivative(p, t));
  out.push_back({l3.velocity, l3.temperature});
  return out;
}

void NavierStokesProblem::on_step_accepted(const NSState&, double, double) {
  if (last_pressure) history.push(std::move(*last_pressure), pending_t_);
  last_pressure.reset();
}

double max_divergence(const NSState& s, const BoundarySet& bc, int accuracy) {
  std::vector<Field> v;
  for (const auto& f : s.v) v.push_back(fill_ghosts(f, bc));
  return divergence(v, accuracy).max_abs();
}

}  // namespace taylorfd
