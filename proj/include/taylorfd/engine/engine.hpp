#pragma once

// Taylor-series time marching: the temporal derivatives G_k = d^k U/dt^k are
// produced by a problem's level cascade and summed into
//   U(t + dt) = G_0 + sum_k G_k dt^k / k!.

#include <cmath>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <cstddef>
#include <utility>
#include <vector>

namespace taylorfd {

class InstabilityError : public std::runtime_error {
 public:
  InstabilityError(int step, int order, double t)
      : std::runtime_error("non-finite values at step " + std::to_string(step) + " (order " +
                           std::to_string(order) + ", t = " + std::to_string(t) + ")"),
        step_(step),
        order_(order),
        t_(t) {}
  int step() const { return step_; }
  int order() const { return order_; }
  double time() const { return t_; }

 private:
  int step_;
  int order_;
  double t_;
};

class CascadeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Anything the engine can combine linearly and inspect for blow-up.
template <class S>
concept TaylorState = std::copy_constructible<S> && requires(S& s, const S& c, double a) {
  { s.add_scaled(c, a) };
  { c.all_finite() } -> std::convertible_to<bool>;
  { c.max_abs() } -> std::convertible_to<double>;
};

// levels(U, t, q) returns {G_1, ..., G_q} for the state U at time t.
// enforce_boundary(U, t) re-imposes time-dependent boundary data after a step.
// Optional hooks:
//   effective_order(q)          order actually usable this step (pressure history)
//   on_step_accepted(U, t, dt)  called once per accepted step
template <class P>
concept TaylorProblem = requires(P& p, const typename P::State& s, typename P::State& m,
                                 double t, int q) {
  requires TaylorState<typename P::State>;
  { p.max_order() } -> std::convertible_to<int>;
  { p.levels(s, t, q) } -> std::same_as<std::vector<typename P::State>>;
  p.enforce_boundary(m, t);
};

struct StepControl {
  double dt = 0.0;
  // Per-step sizes; when non-empty it overrides dt and fixes n_steps.
  std::vector<double> schedule;
  int n_steps = 0;
  int order = 1;
  // Advisory stability limit. Reported when exceeded, never enforced.
  std::optional<double> dt_max;

  int steps() const { return schedule.empty() ? n_steps : static_cast<int>(schedule.size()); }
  double step_size(int n) const { return schedule.empty() ? dt : schedule.at(n); }

  void validate() const {
    if (order < 1) throw std::invalid_argument("Taylor order must be >= 1");
    if (n_steps < 0) throw std::invalid_argument("n_steps must be >= 0");
    if (schedule.empty()) {
      if (n_steps > 0 && !(dt > 0.0)) throw std::invalid_argument("dt must be > 0");
    } else {
      for (double h : schedule) {
        if (!(h > 0.0)) throw std::invalid_argument("every scheduled dt must be > 0");
      }
    }
  }
};

template <class S>
struct TemporalDerivativeStack {
  double t = 0.0;
  std::vector<S> levels;  // G_0 .. G_q

  int order() const { return static_cast<int>(levels.size()) - 1; }
};

struct StepDiagnostics {
  int step = 0;
  double t = 0.0;
  double dt = 0.0;
  int order = 0;
  double max_abs = 0.0;
};

template <class S>
struct MarchResult {
  S state;
  double t = 0.0;
  std::vector<StepDiagnostics> diagnostics;
  std::vector<S> trajectory;  // filled when MarchOptions::keep_every > 0
  bool exceeded_dt_max = false;
};

struct MarchOptions {
  double t0 = 0.0;
  // Keep every n-th state (plus the initial one). 0 keeps nothing.
  int keep_every = 0;
};

template <TaylorProblem P>
TemporalDerivativeStack<typename P::State> build_stack(P& problem, const typename P::State& u,
                                                       double t, int q) {
  if (q < 1) throw CascadeError("Taylor order must be >= 1");
  if (q > problem.max_order()) {
    throw CascadeError("cascade provides " + std::to_string(problem.max_order()) +
                       " levels, order " + std::to_string(q) + " requested");
  }
  TemporalDerivativeStack<typename P::State> stack;
  stack.t = t;
  auto g = problem.levels(u, t, q);
  if (static_cast<int>(g.size()) < q) {
    throw CascadeError("cascade returned " + std::to_string(g.size()) + " levels, expected " +
                       std::to_string(q));
  }
  g.resize(q);
  stack.levels.reserve(q + 1);
  stack.levels.push_back(u);
  for (auto& level : g) stack.levels.push_back(std::move(level));
  return stack;
}

// G_0 + sum_{k=1..q} G_k dt^k / k!, accumulated in increasing k. For q = 1 the
// single update is G_0 + dt * G_1, the explicit Euler step.
template <TaylorState S>
S taylor_step(const TemporalDerivativeStack<S>& stack, double dt) {
  S out = stack.levels.front();
  double c = 1.0;
  for (int k = 1; k <= stack.order(); ++k) {
    c = c * dt / k;
    out.add_scaled(stack.levels[k], c);
  }
  return out;
}

namespace detail {

template <class P>
int usable_order(P& problem, int q) {
  if constexpr (requires { { problem.effective_order(q) } -> std::convertible_to<int>; }) {
    return problem.effective_order(q);
  } else {
    return q;
  }
}

template <class P, class S>
void accepted(P& problem, const S& u, double t, double dt) {
  if constexpr (requires { problem.on_step_accepted(u, t, dt); }) {
    problem.on_step_accepted(u, t, dt);
  }
}

}  // namespace detail

template <TaylorProblem P>
MarchResult<typename P::State> march(P& problem, typename P::State initial,
                                     const StepControl& control, MarchOptions options = {}) {
  control.validate();
  MarchResult<typename P::State> result{std::move(initial), options.t0, {}, {}, false};
  if (options.keep_every > 0) result.trajectory.push_back(result.state);
  const int n = control.steps();
  result.diagnostics.reserve(n);
  for (int step = 0; step < n; ++step) {
    const double dt = control.step_size(step);
    if (control.dt_max && dt > *control.dt_max) result.exceeded_dt_max = true;
    const int q = detail::usable_order(problem, control.order);
    auto stack = build_stack(problem, result.state, result.t, q);
    result.state = taylor_step(stack, dt);
    result.t = control.schedule.empty() ? options.t0 + (step + 1) * dt : result.t + dt;
    problem.enforce_boundary(result.state, result.t);
    if (!result.state.all_finite()) throw InstabilityError(step + 1, q, result.t);
    result.diagnostics.push_back({step + 1, result.t, dt, q, result.state.max_abs()});
    detail::accepted(problem, result.state, result.t, dt);
    if (options.keep_every > 0 && (step + 1) % options.keep_every == 0) {
      result.trajectory.push_back(result.state);
    }
  }
  return result;
}

// Compares G_1..G_q from the cascade with centered time differences of
// order-1 marches of `substeps` steps over +-eps, +-2 eps. Each march result
// is Richardson-extrapolated (2 U_{2m} - U_m) to second order in the substep.
// Returns max|G_k - FD_k| per level, also relative to max|G_k| (the relative
// entry equals the absolute one when G_k vanishes). `view` restricts the
// comparison to part of the state (e.g. velocity only); it is applied to
// both G_k and FD_k.
// The problem is copied, so history-carrying problems are left untouched.
struct LevelDiscrepancy {
  double absolute = 0.0;
  double relative = 0.0;
};

template <TaylorProblem P, class View = std::nullptr_t>
std::vector<LevelDiscrepancy> temporal_derivative_check(const P& problem, const typename P::State& u,
                                                        double t, int q, double eps,
                                                        int substeps = 8, View view = nullptr) {
  using S = typename P::State;
  if (q < 1 || q > 3) throw std::invalid_argument("temporal_derivative_check supports q = 1..3");
  if (!(eps > 0.0) || substeps < 1) throw std::invalid_argument("eps and substeps must be positive");

  // Plain order-1 stepping; tau may be negative.
  auto shifted = [&](double tau) {
    auto run = [&](int m) {
      P copy = problem;
      S state = u;
      const double h = tau / m;
      for (int n = 0; n < m; ++n) {
        const double tn = t + n * h;
        state = taylor_step(build_stack(copy, state, tn, 1), h);
        copy.enforce_boundary(state, t + (n + 1) * h);
        detail::accepted(copy, state, t + (n + 1) * h, h);
      }
      return state;
    };
    S fine = run(2 * substeps);
    fine.add_scaled(fine, 1.0);
    fine.add_scaled(run(substeps), -1.0);
    return fine;
  };

  P copy = problem;
  const auto stack = build_stack(copy, u, t, q);

  const S p1 = shifted(eps), m1 = shifted(-eps);
  std::vector<S> fd;
  {
    S d1 = p1;
    d1.add_scaled(m1, -1.0);
    S g1 = S(u);
    g1.add_scaled(g1, -1.0);
    g1.add_scaled(d1, 1.0 / (2.0 * eps));
    fd.push_back(std::move(g1));
  }
  if (q >= 2) {
    S d2 = p1;
    d2.add_scaled(u, -2.0);
    d2.add_scaled(m1, 1.0);
    S g2 = S(u);
    g2.add_scaled(g2, -1.0);
    g2.add_scaled(d2, 1.0 / (eps * eps));
    fd.push_back(std::move(g2));
  }
  if (q >= 3) {
    const S p2 = shifted(2.0 * eps), m2 = shifted(-2.0 * eps);
    S d3 = p2;
    d3.add_scaled(p1, -2.0);
    d3.add_scaled(m1, 2.0);
    d3.add_scaled(m2, -1.0);
    S g3 = S(u);
    g3.add_scaled(g3, -1.0);
    g3.add_scaled(d3, 1.0 / (2.0 * eps * eps * eps));
    fd.push_back(std::move(g3));
  }

  std::vector<LevelDiscrepancy> out;
  auto seen = [&](const S& x) {
    if constexpr (std::is_same_v<View, std::nullptr_t>) {
      return x;
    } else {
      return S(view(x));
    }
  };
  for (int k = 1; k <= q; ++k) {
    const S level = seen(stack.levels[k]);
    S diff = level;
    diff.add_scaled(seen(fd[k - 1]), -1.0);
    const double scale = level.max_abs();
    const double abs = diff.max_abs();
    out.push_back({abs, scale > 0.0 ? abs / scale : abs});
  }
  return out;
}

}  // namespace taylorfd
