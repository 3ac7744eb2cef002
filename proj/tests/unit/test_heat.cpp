#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "taylorfd/field/derivative.hpp"
#include "taylorfd/field/stencil.hpp"
#include "taylorfd/heat/semi_infinite.hpp"
#include "taylorfd/oracles/heat_oracles.hpp"
#include "taylorfd/oracles/quadrature.hpp"

using namespace taylorfd;

namespace {

const double kPi = std::numbers::pi;

double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

BoundarySet one_sided_line() {
  BoundarySet bc;
  bc.set_axis(0, BoundaryCondition::one_sided());
  return bc;
}

Field sampled(const Grid& g, const std::function<double(double)>& fn) {
  return Field::sample(g, [&](const Point& p) { return fn(p[0]); });
}

HeatSolution erfc_run(int order, double dt) {
  HeatProblem p;
  p.surface = SurfaceTemperature::constant(1.0);
  p.x_max = 3.0;
  p.n_cells = 150;
  StepControl c;
  c.dt = dt;
  c.n_steps = static_cast<int>(std::lround(0.1 / dt));
  c.order = order;
  return multi_step_taylor_solution(p, c);
}

}  // namespace

TEST_SUITE("heat-semiinfinite") {
  TEST_CASE("levels of simple profiles") {
    const Grid g = Grid::line(0.0, 1.0, 40, 4);
    const auto bc = one_sided_line();
    for (auto mode : {HeatLevelMode::Recursive, HeatLevelMode::Direct}) {
      const auto zero = heat_levels(Field(g), 3, bc, 0.0, 2, mode);
      for (const auto& l : zero) CHECK(l.max_abs() == 0.0);
    }
    const Field sq = sampled(g, [](double x) { return x * x; });
    for (auto mode : {HeatLevelMode::Recursive, HeatLevelMode::Direct}) {
      const auto lv = heat_levels(sq, 2, bc, 0.0, 2, mode);
      Field two = lv[0];
      two.add_scaled(Field(g, Quantity::Generic, 2.0), -1.0);
      CHECK(two.max_abs() < 1e-9);
      CHECK(lv[1].max_abs() < 1e-6);
    }
  }

  TEST_CASE("levels of exp(-x) approach exp(-x)") {
    const auto bc = one_sided_line();
    double prev = 0.0;
    for (int n : {40, 80}) {
      const Grid g = Grid::line(0.0, 2.0, n, 6);
      const Field f = sampled(g, [](double x) { return std::exp(-x); });
      const auto lv = heat_levels(f, 2, bc, 0.0, 4, HeatLevelMode::Direct);
      double err = 0.0;
      for (const auto& l : lv) {
        Field d = l;
        d.add_scaled(f, -1.0);
        err = std::max(err, d.max_abs());
      }
      CHECK(err < 1e-3);
      if (prev > 0.0) CHECK(prev / err > 8.0);
      prev = err;
    }
  }

  TEST_CASE("composed levels equal the doubled index on polynomials") {
    const Grid g = Grid::line(-1.0, 1.0, 30, 6);
    const auto bc = one_sided_line();
    const Field f = sampled(g, [](double x) { return std::pow(x, 7) - 3 * std::pow(x, 5) + x * x; });
    const auto once = heat_levels(f, 1, bc, 0.0, 6, HeatLevelMode::Direct);
    const auto twice = heat_levels(fill_ghosts(once[0], bc), 1, bc, 0.0, 6, HeatLevelMode::Direct);
    const auto direct = heat_levels(f, 2, bc, 0.0, 6, HeatLevelMode::Direct);
    Field d = twice[0];
    d.add_scaled(direct[1], -1.0);
    CHECK(d.max_abs() < 1e-6 * direct[1].max_abs());
    // x^7 - 3x^5 + x^2 has D4 = 840 x^3 - 360 x.
    Field exact = sampled(g, [](double x) { return 840 * std::pow(x, 3) - 360 * x; });
    exact.add_scaled(direct[1], -1.0);
    CHECK(exact.max_abs() < 1e-6);
  }

  TEST_CASE("levels need enough ghost layers") {
    const Grid g = Grid::line(0.0, 1.0, 40, 1);
    CHECK_THROWS_AS(heat_levels(Field(g), 2, one_sided_line(), 0.0, 2, HeatLevelMode::Direct),
                    StencilError);
  }

  TEST_CASE("series flux") {
    const double t = 0.2;
    for (int q = 1; q <= 3; ++q) CHECK(taylor_flux(SurfaceTemperature::constant(0.0), t, q) == 0.0);
    const auto cubic = SurfaceTemperature::custom([t](double tau) { return std::pow(t - tau, 3); });
    CHECK(taylor_flux(cubic, t, 1) == doctest::Approx(-std::pow(t, 2.5) / (2 * std::sqrt(kPi))).epsilon(1e-9));
    // The same antiderivative by brute force.
    const double brute = -3.0 * t / (4.0 * std::sqrt(kPi)) *
                         simpson([t](double u) { return 2.0 * u * u; }, 0.0, std::sqrt(t));
    CHECK(brute == doctest::Approx(-std::pow(t, 2.5) / (2 * std::sqrt(kPi))).epsilon(1e-10));

    // Order 1 against t times an independently integrated cubic kernel.
    const auto hist = SurfaceTemperature::custom([t](double tau) { return std::pow(t - tau, 3) * std::exp(tau); });
    const double third = -3.0 / (4.0 * std::sqrt(kPi)) *
                         simpson([&](double u) { return 2.0 * u * u * std::exp(t - u * u); },
                                 0.0, std::sqrt(t));
    CHECK(taylor_flux(hist, t, 1) == doctest::Approx(t * third).epsilon(1e-8));
    // Telescoping: each extra order adds t^n/n! times the next odd derivative.
    const auto quartic = SurfaceTemperature::custom([t](double tau) { return std::pow(t - tau, 4); });
    CHECK(taylor_flux(quartic, t, 2) - taylor_flux(quartic, t, 1) ==
          doctest::Approx(t * t / 2 * spatial_derivative_integral(quartic, 0.0, t, 5)).epsilon(1e-12));
    CHECK_THROWS_AS(taylor_flux(SurfaceTemperature::constant(1.0), t, 1), DivergentIntegralError);
    CHECK_THROWS_AS(taylor_flux(cubic, t, 3), DivergentIntegralError);
  }

  TEST_CASE("zero surface temperature leaves the field at zero") {
    HeatProblem p;
    StepControl c;
    c.dt = 1e-4;
    c.n_steps = 50;
    c.order = 3;
    const auto s = multi_step_taylor_solution(p, c);
    CHECK(s.temperature.max_abs() == 0.0);
    CHECK_FALSE(s.incompatible_start);
    for (double q : s.inflow) CHECK(q == 0.0);
    CHECK(s.inflow.size() == 50);
  }

  TEST_CASE("constant surface temperature follows erfc") {
    for (int order : {1, 2}) {
      const auto s = erfc_run(order, 1e-4);
      CHECK(s.incompatible_start);
      CHECK(s.start_mismatch == 1.0);
      CHECK(s.t == doctest::Approx(0.1).epsilon(1e-12));
      const Grid& g = s.temperature.grid();
      double worst = 0.0;
      for (int i = 1; i < g.n_nodes(0) - 1; ++i) {
        const double x = g.axis(0).coordinate(i);
        worst = std::max(worst, std::abs(s.temperature(i) - std::erfc(x / (2 * std::sqrt(s.t)))));
      }
      CHECK(worst < 1e-2);
      CHECK(s.inflow.back() == doctest::Approx(1 / std::sqrt(kPi * s.t)).epsilon(5e-2));
    }
  }

  TEST_CASE("heating gives inflow for every method") {
    const double t = 0.1;
    for (const auto& ts : {SurfaceTemperature::constant(1.0), SurfaceTemperature::polynomial({0, 1}),
                           SurfaceTemperature::polynomial({0.5, 0, 2}), SurfaceTemperature::exponential(1, 1)}) {
      CHECK(exact_flux(ts, t) > 0.0);
      CHECK(fractional_flux(ts, t) > 0.0);
      const auto r = flux_report(ts, t, {1, 2}, 1e-4);
      CHECK(r.taylor.at(1) > 0.0);
      CHECK(r.taylor.at(2) > 0.0);
      CHECK(r.relative_differences.at({"duhamel", "fractional"}) < 1e-6);
      CHECK(r.relative_differences.at({"duhamel", "taylor2"}) < 5e-2);
      CHECK_FALSE(r.series.at(1).has_value());
    }
  }

  TEST_CASE("flux report lists every requested order") {
    const double t = 0.05;
    const auto cubic = SurfaceTemperature::custom([t](double tau) { return std::pow(t - tau, 3); });
    const auto r = flux_report(cubic, t, {1, 2, 3}, 2e-4);
    CHECK(r.taylor.size() == 3);
    CHECK(r.series.size() == 3);
    CHECK(r.series.at(1).has_value());
    CHECK(*r.series.at(1) == doctest::Approx(std::pow(t, 2.5) / (2 * std::sqrt(kPi))));
    CHECK_FALSE(r.series.at(3).has_value());
    CHECK(r.relative_differences.count({"duhamel", "taylor3"}) == 1);
  }

  TEST_CASE("error estimate anchors") {
    for (double t : {1e-3, 0.01, 0.1, 1.0, 10.0}) {
      CHECK(flux_error_estimate(0.0, t, 1) == 0.0);
      CHECK(flux_error_estimate(0.0, t, 2) == 0.0);
      CHECK_FALSE(std::signbit(flux_error_estimate(0.0, t, 1)));
    }
    double prev = 0.0;
    for (int i = 0; i < 10; ++i) {
      const double t = 0.5 * std::pow(0.5, i);
      const double v = std::abs(flux_error_estimate(1.0, t, 1));
      CHECK(v <= 1.0 / (4 * std::sqrt(t)) * std::exp(-1.0 / (4 * t)) * (1 + 1e-15));
      if (i > 0) CHECK(v < prev);
      prev = v;
    }
    CHECK(flux_error_estimate(1.0, 1e-4, 1) < 1e-300);
    for (double x : {0.3, 1.0, 2.0}) {
      const double t = 0.2;
      const double e = std::exp(-x * x / (4 * t));
      CHECK(flux_error_estimate(x, t, 2) - flux_error_estimate(x, t, 1) ==
            doctest::Approx(-(x / (16 * std::sqrt(t))) * (5 + x * x / (2 * t)) * e));
    }
    CHECK_THROWS(flux_error_estimate(1.0, 0.0, 1));
  }

  TEST_CASE("resolved problem sizing") {
    const auto p = HeatProblem::resolved(SurfaceTemperature::constant(1.0), 0.25, 1e-4);
    CHECK(p.x_max / (2 * std::sqrt(0.25)) >= 4.0);
    CHECK(p.h() <= 0.02 + 1e-15);
    // dt * rho(D2) <= 2 with rho(D2) = 4 / h^2.
    CHECK(4e-4 / (p.h() * p.h()) <= 2.0);
    const auto coarse = HeatProblem::resolved(SurfaceTemperature::constant(1.0), 0.25, 1e-2);
    CHECK(4e-2 / (coarse.h() * coarse.h()) <= 2.0);
  }

  // Kept out of the suite run; see the heat-error-estimate ctest entry.
  TEST_CASE("error estimate consistency with the marched solution" * doctest::skip()) {
    for (int order : {1, 2}) {
      const auto s = erfc_run(order, 1e-4);
      const Grid& g = s.temperature.grid();
      for (double x : {0.92, 1.0, 1.1, 1.2, 1.4}) {
        const int i = static_cast<int>(std::lround(x / g.spacing(0)));
        const double xi = g.axis(0).coordinate(i);
        const double err = s.temperature(i) - std::erfc(xi / (2 * std::sqrt(s.t)));
        const double est = flux_error_estimate(xi, s.t, order);
        INFO("order " << order << " x " << xi << " measured " << err << " estimate " << est);
        CHECK(std::signbit(err) == std::signbit(est));
        CHECK(std::abs(err) <= 3 * std::abs(est));
        CHECK(std::abs(est) <= 3 * std::abs(err));
      }
    }
  }
}
