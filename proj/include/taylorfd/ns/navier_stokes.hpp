#pragma once

// Incompressible, non-isothermal Navier-Stokes with constant properties:
//   div v = 0,  v_t = F - grad p / rho,  T_t = F_T
//   F   = nu lap v - (v.grad) v + f
//   F_T = Phi + (lambda / rho c) lap T - v.grad T
// and the Taylor cascade for the second and third time derivatives.

#include <deque>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "taylorfd/engine/engine.hpp"
#include "taylorfd/field/boundary.hpp"
#include "taylorfd/field/field.hpp"
#include "taylorfd/poisson/poisson.hpp"

namespace taylorfd {

struct FluidProperties {
  double rho = 1.0;
  double mu = 0.01;
  double lambda = 0.01;
  double c = 1.0;

  double nu() const { return mu / rho; }
  double kappa() const { return lambda / (rho * c); }
  void validate() const;
};

// Component c of the body force at p and t, or its `level`-th time derivative.
using ForceFn = std::function<double(const Point& p, double t, int component, int level)>;

// One velocity component per grid axis (2-D runs have no v_z) plus T.
struct NSState {
  std::vector<Field> v;
  Field T;

  NSState& add_scaled(const NSState& x, double a);
  bool all_finite() const;
  double max_abs() const;
  const Grid& grid() const { return T.grid(); }
};

// How the temperature cascade treats the time derivatives of Phi and of the
// convective term.
enum class NSCascadeMode {
  // Phi_1 = B(F, F), Phi_2 = B(F_1, F_1) and the level-3 convective term
  // F_1.grad T + 2 F.grad F_T + v.grad F_T^1, exactly as the method states
  // them. Always non-negative dissipation, but not the time derivative of Phi.
  AsPrinted,
  // Phi_1 = 2 B(v, v_t), Phi_2 = 2 B(v_t, v_t) + 2 B(v, v_tt) and the
  // convective term with v_t, v_tt in place of F, F_1: the exact time
  // derivatives of the temperature equation.
  Consistent,
};

// B(u, w) = (mu / rho c) [2 sum_i d_i u_i d_i w_i + sum_{i<j} (d_j u_i + d_i u_j)(d_j w_i + d_i w_j)]
// for velocity-like fields with filled ghosts. Phi = B(v, v).
Field dissipation_form(const std::vector<Field>& u, const std::vector<Field>& w,
                       const FluidProperties& props, int accuracy = 2);
Field dissipation_phi(const std::vector<Field>& v, const FluidProperties& props, int accuracy = 2);
// The same quadratic form on F and on F_1.
Field dissipation_phi1(const std::vector<Field>& F, const FluidProperties& props, int accuracy = 2);
Field dissipation_phi2(const std::vector<Field>& F1, const FluidProperties& props, int accuracy = 2);

struct NSContext {
  FluidProperties props;
  BoundarySet bc;  // shared by every velocity component, T and p
  ForceFn force;   // empty means no force
  double t = 0.0;
  int accuracy = 2;
  NSCascadeMode mode = NSCascadeMode::AsPrinted;
};

struct NSRhs {
  std::vector<Field> F;
  Field FT;
};

// Level k carries the k-th time derivatives of v and T together with the
// right-hand sides they were built from (F, F_1, F_2 and F_T, F_T^1, F_T^2).
struct NSLevel {
  std::vector<Field> velocity;
  Field temperature;
  std::vector<Field> F;
  Field FT;
};

NSRhs ns_rhs(const NSState& s, const NSContext& ctx);
NSLevel ns_level1(const NSState& s, const NSContext& ctx, const Field& p);
NSLevel ns_level2(const NSState& s, const NSContext& ctx, const NSLevel& l1, const Field& p,
                  const Field& dp_dt);
NSLevel ns_level3(const NSState& s, const NSContext& ctx, const NSLevel& l1, const NSLevel& l2,
                  const Field& p, const Field& dp_dt, const Field& d2p_dt2);

// Pressure from lap p = rho div F with the wide (D1 D1) Laplacian, so a
// projected first-order step leaves div v at the solver tolerance.
PoissonResult ns_pressure(const std::vector<Field>& F, const NSContext& ctx,
                          const PoissonProblem& settings);

// Velocity on a periodic grid from a streamfunction: v_x = D1_y psi,
// v_y = -D1_x psi. The discrete divergence vanishes to round-off.
std::vector<Field> velocity_from_streamfunction(const Field& psi, const BoundarySet& bc);

// Taylor-Green vortex on [0, 2 pi)^2 with n cells per side:
// psi = amplitude sin x sin y, T = T0 + dT cos x cos y.
NSState taylor_green_state(int n, double amplitude = 1.0, double T0 = 1.0, double dT = 0.1);

BoundarySet periodic_box(int dims);

// Backward-difference pressure history (three layers, newest first).
class PressureHistory {
 public:
  void push(Field p, double t);
  int layers() const { return static_cast<int>(layers_.size()); }
  void clear() { layers_.clear(); }
  // First- and second-order backward differences using p_now at t_now as the
  // newest layer; need 1 and 2 stored layers respectively.
  Field first_derivative(const Field& p_now, double t_now) const;
  Field second_derivative(const Field& p_now, double t_now) const;

 private:
  std::deque<std::pair<Field, double>> layers_;
};

// Engine adapter. One Poisson solve per step on the current state; pressure
// time derivatives come from the history, so the order usable on a step is
// min(q, 1 + stored layers).
struct NavierStokesProblem {
  using State = NSState;

  NSContext ctx;
  PoissonProblem poisson;  // solver settings; rhs and bc are filled per solve
  PressureHistory history;
  std::optional<Field> last_pressure;
  PoissonResult last_solve;

  NavierStokesProblem(NSContext c, double poisson_tolerance = 1e-11);

  int max_order() const { return 3; }
  int effective_order(int q) const { return std::min(q, 1 + history.layers()); }
  std::vector<NSState> levels(const NSState& s, double t, int q);
  void enforce_boundary(NSState&, double) const {}
  void on_step_accepted(const NSState&, double t, double dt);

 private:
  double pending_t_ = 0.0;
};

// Discrete divergence of the velocity, max over nodes.
double max_divergence(const NSState& s, const BoundarySet& bc, int accuracy = 2);

}  // namespace taylorfd
