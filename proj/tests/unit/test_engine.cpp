#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "taylorfd/engine/engine.hpp"
#include "taylorfd/field/derivative.hpp"

using namespace taylorfd;
using namespace testsupport;

TEST_SUITE("taylor-engine") {
  TEST_CASE("constant Burgers state has a vanishing cascade") {
    auto p = periodic_burgers(0.7, 4);
    const Field u(periodic_line(32, required_ghost_width(10, 4)), Quantity::Generic, 1.0);
    const auto stack = build_stack(p, u, 0.0, 5);
    REQUIRE(stack.order() == 5);
    for (int k = 1; k <= 5; ++k) CHECK(stack.levels[k].max_abs() == 0.0);
  }

  TEST_CASE("advection of u = x") {
    auto p = linear_advection(2);
    const Grid grid = Grid::line(0.0, 1.0, 20, 2);
    const Field u = Field::sample(grid, [](const Point& x) { return x[0]; });
    const auto stack = build_stack(p, u, 0.0, 2);
    stack.levels[1].for_each_node([&](int i, int, int) { CHECK(stack.levels[1](i) == doctest::Approx(1.0).epsilon(1e-13)); });
    CHECK(stack.levels[2].max_abs() < 1e-11);
  }

  TEST_CASE("Burgers level 1 on sin x") {
    auto p = periodic_burgers(1.0, 6);
    const Grid grid = periodic_line(64, required_ghost_width(4, 6));
    const Field u = Field::sample(grid, [](const Point& x) { return std::sin(x[0]); });
    const auto stack = build_stack(p, u, 0.0, 1);
    double e = 0.0;
    stack.levels[1].for_each_node([&](int i, int, int) {
      const double x = grid.coordinates(i)[0];
      e = std::max(e, std::abs(stack.levels[1](i) - (-std::sin(x) - std::sin(x) * std::cos(x))));
    });
    CHECK(e < 1e-6);
  }

  TEST_CASE("taylor_step examples") {
    auto p = linear_advection(2);
    const Grid grid = Grid::line(0.0, 1.0, 20, required_ghost_width(5, 2));
    const Field u = Field::sample(grid, [](const Point& x) { return x[0]; });
    for (int q = 1; q <= 5; ++q) {
      const Field next = taylor_step(build_stack(p, u, 0.0, q), 0.01);
      double e = 0.0;
      next.for_each_node([&](int i, int, int) { e = std::max(e, std::abs(next(i) - (grid.coordinates(i)[0] + 0.01))); });
      CHECK(e < 1e-12);
    }
    TemporalDerivativeStack<Field> zero{0.0, {u, Field(grid), Field(grid), Field(grid)}};
    const Field same = taylor_step(zero, 0.3);
    CHECK(max_abs_diff(same, u) == 0.0);
  }

  TEST_CASE("consistency telescoping") {
    auto p = periodic_burgers(0.1, 4);
    const Grid grid = periodic_line(48, required_ghost_width(8, 4));
    const Field u = Field::sample(grid, [](const Point& x) { return std::sin(x[0]) + 0.5; });
    const double dt = 0.05;
    const auto stack = build_stack(p, u, 0.0, 4);
    double c = 1.0;
    for (int q = 1; q <= 4; ++q) {
      c = c * dt / q;
      auto lower = stack;
      lower.levels.resize(q);
      auto upper = stack;
      upper.levels.resize(q + 1);
      const Field diff = taylor_step(upper, dt) - taylor_step(lower, dt);
      const Field expected = c * stack.levels[q];
      CHECK(max_abs_diff(diff, expected) <= 4e-16 * (u.max_abs() + 1.0));
    }
  }

  TEST_CASE("order 1 is the explicit Euler step, bit for bit") {
    auto p = periodic_burgers(0.1, 4);
    const Grid grid = periodic_line(64, required_ghost_width(2, 4));
    Field u = Field::sample(grid, [](const Point& x) { return std::sin(x[0]); });
    Field euler = u;
    StepControl c;
    c.dt = 1e-3;
    c.n_steps = 20;
    c.order = 1;
    const auto r = march(p, u, c);
    for (int n = 0; n < 20; ++n) euler = burgers_euler_step(euler, 0.1, 1e-3, p.bc, n * 1e-3, 4);
    double worst = 0.0;
    r.state.for_each_node([&](int i, int, int) { worst = std::max(worst, std::abs(r.state(i) - euler(i))); });
    CHECK(worst == 0.0);
  }

  TEST_CASE("march bookkeeping") {
    auto p = periodic_burgers(0.1, 2);
    const Grid grid = periodic_line(16, 1);
    const Field u(grid, Quantity::Generic, 1.0);
    StepControl c;
    c.dt = 0.01;
    c.n_steps = 0;
    auto r0 = march(p, u, c);
    CHECK(max_abs_diff(r0.state, u) == 0.0);
    CHECK(r0.diagnostics.empty());

    const Grid g5 = periodic_line(16, required_ghost_width(10, 2));
    const Field one(g5, Quantity::Generic, 1.0);
    c.n_steps = 100;
    c.order = 5;
    c.dt_max = 0.005;
    auto r = march(p, one, c, {0.0, 50});
    CHECK((r.state - one).max_abs() < 1e-12);
    CHECK(r.diagnostics.size() == 100);
    CHECK(r.diagnostics.back().t == doctest::Approx(1.0));
    CHECK(r.trajectory.size() == 3);
    CHECK(r.exceeded_dt_max);

    c.schedule = {0.01, 0.02, 0.03};
    auto rs = march(p, one, c);
    CHECK(rs.diagnostics.size() == 3);
    CHECK(rs.t == doctest::Approx(0.06));
  }

  TEST_CASE("instability is reported with its step") {
    auto p = periodic_burgers(1.0, 2);
    const Grid grid = periodic_line(64, 1);
    const Field u = Field::sample(grid, [](const Point& x) { return std::sin(x[0]); });
    StepControl c;
    c.dt = 0.5;
    c.n_steps = 2000;
    c.order = 1;
    try {
      (void)march(p, u, c);
      FAIL("expected an instability");
    } catch (const InstabilityError& e) {
      CHECK(e.step() > 0);
      CHECK(e.order() == 1);
    }
  }

  TEST_CASE("cascade limits and control validation") {
    auto p = periodic_burgers(1.0, 2);
    const Field u(periodic_line(16, 6), Quantity::Generic, 1.0);
    CHECK_THROWS_AS(build_stack(p, u, 0.0, 6), CascadeError);
    StepControl c;
    c.n_steps = 1;
    CHECK_THROWS(c.validate());
  }

  TEST_CASE("temporal derivative check") {
    SUBCASE("constant state") {
      auto p = periodic_burgers(0.1, 4);
      const Field u(periodic_line(32, required_ghost_width(6, 4)), Quantity::Generic, 2.0);
      for (auto d : temporal_derivative_check(p, u, 0.0, 3, 1e-3)) CHECK(d.absolute == 0.0);
    }
    SUBCASE("Burgers sin, level 1 at eps 1e-5") {
      auto p = periodic_burgers(0.1, 4);
      const Field u = Field::sample(periodic_line(64, required_ghost_width(2, 4)),
                                    [](const Point& x) { return std::sin(x[0]); });
      const auto d = temporal_derivative_check(p, u, 0.0, 1, 1e-5);
      CHECK(d[0].relative < 1e-4);
    }
    SUBCASE("advection u = x, level 2") {
      auto p = linear_advection(2);
      const Field u = Field::sample(Grid::line(0.0, 1.0, 20, 2), [](const Point& x) { return x[0]; });
      const auto d = temporal_derivative_check(p, u, 0.0, 2, 1e-3);
      CHECK(d[1].absolute < 1e-8);
    }
  }
}
