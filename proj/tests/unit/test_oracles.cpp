#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

#include "taylorfd/oracles/heat_oracles.hpp"
#include "taylorfd/oracles/quadrature.hpp"

using namespace taylorfd;

namespace {

const double kPi = std::numbers::pi;

// Composite Simpson with n (even) panels; the test-side reference quadrature.
double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

// Printed kernels for the second, third and fourth x-derivatives, s = t - tau.
double printed_kernel(int k, double x, double s) {
  const double pre = 1.0 / (2.0 * std::sqrt(kPi)) * std::pow(s, -1.5) * std::exp(-x * x / (4 * s));
  switch (k) {
    case 2: return pre * (x / (2 * s)) * (x * x / (2 * s) - 3);
    case 3: return pre * (x * x / (4 * s * s) * (3 - x * x / (2 * s)) + 3 / (4 * s) * (x * x / s - 2));
    case 4: return pre * (x / (4 * s * s)) * (std::pow(x, 4) / (4 * s * s) - 5 * x * x / s + 15);
  }
  return 0.0;
}

SurfaceTemperature vanishing_cubic(double t_end) {
  return SurfaceTemperature::custom([t_end](double tau) { return std::pow(t_end - tau, 3); });
}

}  // namespace

TEST_SUITE("oracles") {
  TEST_CASE("fractional flux closed forms") {
    const double t = 0.3;
    CHECK(fractional_flux(SurfaceTemperature::constant(0.0), t) == 0.0);
    CHECK(fractional_flux(SurfaceTemperature::constant(1.0), t) == doctest::Approx(1.0 / std::sqrt(kPi * t)).epsilon(1e-14));
    CHECK(fractional_flux(SurfaceTemperature::polynomial({0.0, 1.0}), t) == doctest::Approx(2.0 * std::sqrt(t / kPi)).epsilon(1e-14));
  }

  TEST_CASE("numeric half-derivative agrees with the closed forms") {
    const double t = 0.4;
    const auto one = SurfaceTemperature::custom([](double) { return 1.0; });
    CHECK(fractional_flux(one, t) == doctest::Approx(1.0 / std::sqrt(kPi * t)).epsilon(1e-9));
    const auto lin = SurfaceTemperature::custom([](double tau) { return 2.0 + 3.0 * tau; });
    CHECK(fractional_flux(lin, t) ==
          doctest::Approx(fractional_flux(SurfaceTemperature::polynomial({2.0, 3.0}), t)).epsilon(1e-9));
    const auto ex = SurfaceTemperature::custom([](double tau) { return std::exp(5.0 * tau); });
    CHECK(fractional_flux(ex, t) ==
          doctest::Approx(fractional_flux(SurfaceTemperature::exponential(1.0, 5.0), t)).epsilon(1e-9));
  }

  TEST_CASE("exact flux: direct and regularized routes") {
    const double t = 0.5;
    CHECK(exact_flux(SurfaceTemperature::constant(0.0), t) == 0.0);
    // Histories vanishing at tau = t.
    const auto lin = SurfaceTemperature::polynomial({t, -1.0});
    CHECK(exact_flux(lin, t, FluxRoute::Direct) == doctest::Approx(fractional_flux(lin, t)).epsilon(1e-6));
    CHECK(exact_flux(lin, t, FluxRoute::Direct) == doctest::Approx(-std::sqrt(t / kPi)).epsilon(1e-9));
    const auto wave = SurfaceTemperature::custom([t](double tau) { return std::sin(3.0 * (t - tau)) * (1.0 + tau); });
    CHECK(exact_flux(wave, t, FluxRoute::Direct) == doctest::Approx(fractional_flux(wave, t)).epsilon(1e-6));

    const auto one = SurfaceTemperature::constant(1.0);
    CHECK_THROWS_AS(exact_flux(one, t, FluxRoute::Direct), DivergentIntegralError);
    CHECK(std::abs(exact_flux(one, t) - 1.0 / std::sqrt(kPi * t)) < 1e-8);
    const auto ex = SurfaceTemperature::exponential(2.0, 1.5);
    CHECK(exact_flux(ex, t) == doctest::Approx(fractional_flux(ex, t)).epsilon(1e-8));
  }

  TEST_CASE("Duhamel solution") {
    const auto one = SurfaceTemperature::constant(1.0);
    const auto ramp = SurfaceTemperature::polynomial({0.5, 2.0});
    CHECK(duhamel_solution(ramp, 0.0, 0.7) == ramp(0.7));
    CHECK(duhamel_solution(one, 20.0, 0.1) < 1e-30);
    // erfc(1) = 0.157299207050285...
    CHECK(duhamel_solution(one, 1.0, 0.25) == doctest::Approx(0.15729920705028513).epsilon(1e-12));
    for (double x : {0.05, 0.3, 1.0, 2.0}) {
      CHECK(duhamel_solution(one, x, 0.2) == doctest::Approx(std::erfc(x / (2.0 * std::sqrt(0.2)))).epsilon(1e-11));
    }
  }

  TEST_CASE("Duhamel solution satisfies the heat equation") {
    const auto ts = SurfaceTemperature::custom([](double tau) { return tau * tau + std::sin(4 * tau); });
    const double h = 2e-3, k = 1e-4;
    double worst = 0.0;
    for (double x : {0.1, 0.3, 0.6}) {
      for (double t : {0.2, 0.5}) {
        const double tt = (duhamel_solution(ts, x, t + k) - duhamel_solution(ts, x, t - k)) / (2 * k);
        const double xx = (duhamel_solution(ts, x + h, t) - 2 * duhamel_solution(ts, x, t) +
                           duhamel_solution(ts, x - h, t)) / (h * h);
        worst = std::max(worst, std::abs(tt - xx));
      }
    }
    CHECK(worst < 1e-3);
  }

  TEST_CASE("kernel integrals against the printed low-order kernels") {
    const auto ts = SurfaceTemperature::custom([](double tau) { return 1.0 + tau * std::cos(tau); });
    const double t = 0.4;
    for (int k : {2, 3, 4}) {
      for (double x : {0.2, 0.5}) {
        // s = u^2 keeps the reference integrand smooth near s = 0.
        const double ref = simpson([&](double u) {
          if (u == 0.0) return 0.0;
          return 2.0 * u * ts(t - u * u) * printed_kernel(k, x, u * u);
        }, 0.0, std::sqrt(t));
        CHECK(spatial_derivative_integral(ts, x, t, k) == doctest::Approx(ref).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("kernel integrals against finite differences of the Duhamel solution") {
    const auto ts = SurfaceTemperature::custom([](double tau) { return std::exp(tau) - 0.5 * tau; });
    const double t = 0.3, x = 0.5, h = 1e-2;
    const double fd2 = (duhamel_solution(ts, x + h, t) - 2 * duhamel_solution(ts, x, t) +
                        duhamel_solution(ts, x - h, t)) / (h * h);
    CHECK(std::abs(spatial_derivative_integral(ts, x, t, 2) - fd2) < 1e-4);
    for (int k = 2; k <= 7; ++k) {
      const double d = 1e-3;
      const double fd = (spatial_derivative_integral(ts, x + d, t, k - 1) -
                         spatial_derivative_integral(ts, x - d, t, k - 1)) / (2 * d);
      const double v = spatial_derivative_integral(ts, x, t, k);
      INFO("k = " << k);
      CHECK(std::abs(v - fd) < 1e-5 * std::max(1.0, std::abs(v)));
    }
  }

  TEST_CASE("boundary values of the kernel integrals") {
    const double t = 0.2;
    const auto cubic = vanishing_cubic(t);
    CHECK(spatial_derivative_integral(cubic, 0.0, t, 3) ==
          doctest::Approx(-std::pow(t, 1.5) / (2.0 * std::sqrt(kPi))).epsilon(1e-9));
    // Fifth and seventh: 15/(8 sqrt pi) I_{7/2} and -105/(16 sqrt pi) I_{9/2} with
    // I_{7/2} = 2 t^{1/2}, I_{9/2} diverging for the cubic.
    CHECK(spatial_derivative_integral(cubic, 0.0, t, 5) ==
          doctest::Approx(15.0 / (8.0 * std::sqrt(kPi)) * 2.0 * std::sqrt(t)).epsilon(1e-9));
    CHECK_THROWS_AS(spatial_derivative_integral(cubic, 0.0, t, 7), DivergentIntegralError);
    const auto quartic = SurfaceTemperature::custom([t](double tau) { return std::pow(t - tau, 4); });
    CHECK(spatial_derivative_integral(quartic, 0.0, t, 7) ==
          doctest::Approx(-105.0 / (16.0 * std::sqrt(kPi)) * 2.0 * std::sqrt(t)).epsilon(1e-9));
    CHECK_THROWS_AS(spatial_derivative_integral(SurfaceTemperature::constant(1.0), 0.0, t, 3),
                    DivergentIntegralError);
    CHECK(spatial_derivative_integral(SurfaceTemperature::constant(0.0), 0.3, t, 5) == 0.0);
    // Even orders at the wall are time derivatives of the wall temperature.
    CHECK(spatial_derivative_integral(SurfaceTemperature::polynomial({0, 0, 3}), 0.0, t, 2) ==
          doctest::Approx(6.0 * t));
  }

  TEST_CASE("Gaussian moments") {
    CHECK(gaussian_moment(0.0, 1.0, 2) == doctest::Approx(std::sqrt(kPi) / 4.0).epsilon(1e-15));
    for (int n = 0; n <= 8; n += 2) {
      CHECK(gaussian_moment(40.0, 1.0, n) < 1e-100);
      for (double x : {0.0, 0.3, 1.0, 2.5}) {
        for (double t : {0.25, 1.0}) {
          const double a = x / (2 * std::sqrt(t));
          const double ref = simpson([n](double xi) { return std::pow(xi, n) * std::exp(-xi * xi); }, a, a + 12.0, 40000);
          INFO("n=" << n << " x=" << x << " t=" << t);
          CHECK(std::abs(gaussian_moment(x, t, n) - ref) < 1e-10);
          CHECK(std::abs(gaussian_moment_quadrature(x, t, n) - ref) < 1e-10);
        }
      }
    }
    CHECK(std::abs(gaussian_moment(1.0, 0.25, 4) - gaussian_moment_quadrature(1.0, 0.25, 4)) < 1e-10);
    CHECK_THROWS(gaussian_moment(1.0, 1.0, 3));
  }

  TEST_CASE("combined Gaussian integral") {
    for (double x : {0.4, 1.0, 2.0}) {
      for (double t : {0.1, 0.25, 1.0}) {
        const double a = x / (2 * std::sqrt(t));
        const double ref = simpson([&](double xi) {
          return 2.0 * t * t * std::pow(xi, 4) / std::pow(x, 4) * std::exp(-xi * xi) *
                 (4 * std::pow(xi, 4) - 20 * xi * xi + 15);
        }, a, a + 12.0, 40000);
        CHECK(std::abs(gaussian_combination(x, t) - ref) < 1e-10);
      }
    }
  }

  TEST_CASE("quadrature wrappers") {
    CHECK(integrate_singular([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0).value == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate_smooth([](double x) { return x * x; }, 0.0, 3.0).value == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0).value == doctest::Approx(1.0).epsilon(1e-12));
  }
}
