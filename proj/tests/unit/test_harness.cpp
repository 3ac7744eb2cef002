#include <doctest.h>

#include <cmath>
#include <sstream>

#include "taylorfd/harness/config.hpp"
#include "taylorfd/harness/runner.hpp"
#include "taylorfd/sphere/sphere_stokes.hpp"

using namespace taylorfd;

namespace {

std::string csv(const RunReport& r, bool full = true) {
  std::ostringstream os;
  write_csv(r, os, full);
  return os.str();
}

const char* kSphere = R"({
  "problem": "sphere-stokes", "pe": 1.0, "dt": 1e-4, "t_end": 0.03, "orders": [2],
  "oracle": true, "oracle_tolerance": 1e-9
})";

}  // namespace

TEST_SUITE("cli-harness") {
  TEST_CASE("strict parsing") {
    CHECK_THROWS_AS(parse_config(R"({"problem": "burgers", "n_steps": 1, "viscosity": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "burgers", "n_steps": 1, "pe": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "burgers", "n_steps": "ten"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "burgers", "n_steps": 1.5})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "burgers", "n_steps": 1, "t_end": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "burgers"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "sphere", "n_steps": 1})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "burgers", "n_steps": 1,)"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "burgers", "dt": 0.3, "t_end": 1.0})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "navier-stokes-2d", "n_steps": 1, "orders": [4]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "navier-stokes-2d", "n_steps": 1, "accuracy": 4})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "heat-semiinfinite", "n_steps": 1, "surface": "erf"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"problem": "sphere-stokes", "n_steps": 1, "radii": [13]})"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
    const auto c = parse_config(R"({"problem": "burgers", "dt": 0.25, "t_end": 1.0})");
    CHECK(c.steps() == 4);
    CHECK(c.initial == "constant");
  }

  TEST_CASE("config round trip") {
    for (const char* text :
         {kSphere, R"({"problem": "burgers", "initial": "sin", "nu": 0.1, "dt": 0.1, "n_steps": 3, "orders": [1, 3]})",
          R"({"problem": "heat-semiinfinite", "surface": "exponential", "surface_params": [2, 0.5], "t_end": 0.01})",
          R"({"problem": "navier-stokes-2d", "n_cells": 8, "mu": 0.1, "dt": 0.01, "n_steps": 2})",
          R"({"problem": "advection", "initial": "linear", "x_min": -0.3, "dt": 0.1, "n_steps": 1})"}) {
      const auto c = parse_config(text);
      const auto back = parse_config(serialize_config(c));
      CHECK(back == c);
    }
    auto c = parse_config(R"({"problem": "burgers", "initial": "sin", "nu": 0.1, "dt": 0.01, "n_steps": 20, "orders": [2], "n_cells": 32})");
    CHECK(csv(run_experiment(c)) == csv(run_experiment(parse_config(serialize_config(c)))));
  }

  TEST_CASE("identical configs give identical CSV") {
    const auto c = parse_config(R"({"problem": "navier-stokes-2d", "n_cells": 16, "dt": 1e-3, "n_steps": 5, "orders": [1, 3]})");
    CHECK(csv(run_experiment(c)) == csv(run_experiment(c)));
    const auto s = parse_config(R"({"problem": "sphere-stokes", "n_rho": 110, "n_theta": 20, "dt": 2e-4, "n_steps": 20, "orders": [1, 2]})");
    CHECK(csv(run_experiment(s)) == csv(run_experiment(s)));
  }

  TEST_CASE("csv layout and precision") {
    const auto c = parse_config(R"({"problem": "advection", "n_cells": 6, "dt": 0.1, "n_steps": 0})");
    const RunReport r = run_experiment(c);
    std::ostringstream six, full;
    write_csv(r, six, false);
    write_csv(r, full, true);
    CHECK(six.str() == "problem,order,tau,r_or_x,theta,value\n"
                       "advection,1,0,0,,0\n"
                       "advection,1,0,0.166667,,0.166667\n"
                       "advection,1,0,0.333333,,0.333333\n"
                       "advection,1,0,0.5,,0.5\n"
                       "advection,1,0,0.666667,,0.666667\n"
                       "advection,1,0,0.833333,,0.833333\n"
                       "advection,1,0,1,,1\n");
    CHECK(full.str().find("advection,1,0,0.16666666666666666,,0.16666666666666666\n") != std::string::npos);
  }

  TEST_CASE("zero steps reproduce the initial condition") {
    const auto c = parse_config(R"({"problem": "advection", "n_cells": 10, "dt": 0.1, "n_steps": 0, "orders": [1, 4]})");
    const RunReport r = run_experiment(c);
    REQUIRE(r.rows.size() == 22);
    for (const auto& row : r.rows) CHECK(row.value == row.r_or_x);
  }

  TEST_CASE("constant Burgers stays at one") {
    const auto c = parse_config(R"({"problem": "burgers", "initial": "constant", "initial_value": 1.0,
                                    "dt": 1e-3, "n_steps": 100, "orders": [1, 2, 3, 4, 5], "oracle": true})");
    const RunReport r = run_experiment(c);
    for (const auto& row : r.rows) CHECK(row.value == 1.0);
    CHECK(r.oracle_within(0.0));
  }

  TEST_CASE("sphere boundary rows equal e^3 |cos th|") {
    const RunReport r = run_experiment(parse_config(kSphere));
    int seen = 0;
    for (const auto& row : r.rows) {
      if (row.r_or_x != 1.0) continue;
      const double exact = std::exp(3.0) * std::abs(std::cos(*row.theta));
      CHECK(std::abs(row.value - exact) <= 1e-5 * exact);
      ++seen;
    }
    CHECK(seen == 8);
    CHECK(r.oracle_within(1e-9));
    std::ostringstream os;
    write_csv(r, os);
    CHECK(os.str().find("sphere-stokes,2,0.03,1,0,20.0855\n") != std::string::npos);
    CHECK(os.str().find("sphere-stokes,2,0.03,1,1.25664,6.20677\n") != std::string::npos);
  }

  TEST_CASE("strict oracle comparison") {
    const auto c = parse_config(R"({"problem": "heat-semiinfinite", "surface": "constant", "surface_params": [1.0],
                                    "dt": 1e-4, "t_end": 0.01, "output_x": [0.05, 0.1], "oracle": true})");
    const RunReport r = run_experiment(c);
    REQUIRE(r.oracle_delta.count(1));
    CHECK(r.oracle_within(1e-2));
    CHECK_FALSE(r.oracle_within(1e-9));
  }

  TEST_CASE("sweep slopes") {
    const auto b = parse_config(R"({"problem": "burgers", "initial": "sin", "nu": 0.1, "n_cells": 64, "accuracy": 4,
                                    "dt": 0.02, "t_end": 0.5, "orders": [1, 2, 3]})");
    const SweepReport s = run_sweep(b, 3);
    CHECK(s.reference == "finest");
    for (const auto& e : s.entries) {
      REQUIRE(e.slope);
      CHECK(std::abs(*e.slope - e.order) < 0.3);
    }
    const auto a = parse_config(R"({"problem": "advection", "initial": "linear", "n_cells": 20, "dt": 0.01,
                                    "n_steps": 10, "orders": [1, 2, 3]})");
    const SweepReport sa = run_sweep(a, 2);
    CHECK(sa.reference == "analytic");
    for (const auto& e : sa.entries) {
      CHECK(e.exact);
      CHECK_FALSE(e.slope);
    }
    std::ostringstream os;
    write_sweep(sa, os);
    CHECK(os.str().find("1,exact\n") != std::string::npos);
    CHECK_THROWS_AS(run_sweep(b, 1), ConfigError);
  }

  TEST_CASE("validation suite passes") {
    const auto checks = run_validation();
    CHECK(checks.size() == 6);
    for (const auto& c : checks) {
      INFO(c.name << " = " << c.value);
      CHECK(c.pass);
    }
  }

  // The per-order cost of the sphere cascade is linear in the order (level k
  // is one more application of the operator), so this is expected to fail;
  // it runs as its own ctest entry.
  TEST_CASE("sphere wall times for orders 1-5 within 3x" * doctest::skip()) {
    TableCase tc;
    tc.orders = {1, 2, 3, 4, 5};
    const TableResult r = run_table_case(tc);
    double lo = 1e300, hi = 0.0;
    for (const auto& [q, s] : r.seconds) {
      MESSAGE("order " << q << ": " << s << " s");
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    CHECK(hi <= 3.0 * lo);
  }
}
