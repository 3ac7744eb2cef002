#include "taylorfd/oracles/heat_oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "taylorfd/oracles/quadrature.hpp"

namespace taylorfd {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

double hermite(int n, double u) {
  double h0 = 1.0, h1 = 2.0 * u;
  if (n == 0) return h0;
  for (int m = 1; m < n; ++m) {
    const double h2 = 2.0 * u * h1 - 2.0 * m * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

// Rejects histories for which int_0 T_s(t - u^2) u^{1-2a} du diverges at
// u = 0, judged by whether u times the integrand fails to decay.
void require_endpoint_decay(const SurfaceTemperature& ts, double t, double a) {
  auto scaled = [&](double u) { return std::abs(ts(t - u * u)) * std::pow(u, 2.0 - 2.0 * a); };
  const double u1 = 1e-3 * std::sqrt(t);
  const double u2 = 1e-6 * std::sqrt(t);
  const double g1 = scaled(u1), g2 = scaled(u2);
  if (g2 > 1e-300 && g2 > 0.5 * g1) {
    throw DivergentIntegralError("integral of T_s (t - tau)^-" + std::to_string(a) +
                                 " diverges at tau = t; T_s must vanish faster there");
  }
}

// Integrands below are smooth in u^2 but T_s(t - u^2) loses digits as u -> 0
// (t - u^2 rounds back towards t). One Gauss-Kronrod panel keeps its nodes
// away from u = 0; bisecting towards it only chases rounding noise.
constexpr int kShallow = 0;

// int_0^{sqrt t} 2 T_s(t - u^2) u^{1-2a} du
// Once the endpoint check has passed the integrand is bounded (T_s(t - u^2)
// is a series in u^2 and a is a half-integer).
double history_integral(const SurfaceTemperature& ts, double t, double a) {
  const double p = 1.0 - 2.0 * a;
  return integrate_smooth(
             [&](double u) {
               const double v = ts(t - u * u);
               return v == 0.0 ? 0.0 : 2.0 * v * std::pow(u, p);
             },
             0.0, std::sqrt(t), 1e-12, kShallow)
      .value;
}

double half_integral(const SurfaceTemperature& ts, double tau) {
  if (tau <= 0.0) return 0.0;
  return integrate_smooth([&](double u) { return 2.0 * ts(tau - u * u); }, 0.0, std::sqrt(tau),
                          1e-14, kShallow)
      .value;
}

double numeric_half_derivative(const SurfaceTemperature& ts, double t) {
  const double h = 0.1 * t;
  auto central = [&](double step) {
    return (half_integral(ts, t + step) - half_integral(ts, t - step)) / (2.0 * step);
  };
  const double d0 = central(h), d1 = central(h / 2), d2 = central(h / 4);
  const double r1 = (4.0 * d1 - d0) / 3.0;
  const double r2 = (4.0 * d2 - d1) / 3.0;
  return (16.0 * r2 - r1) / 15.0 / kSqrtPi;
}

void require_positive_time(double t) {
  if (!(t > 0.0)) throw std::invalid_argument("time must be positive");
}

}  // namespace

double fractional_flux(const SurfaceTemperature& ts, double t) {
  require_positive_time(t);
  switch (ts.kind()) {
    case SurfaceTemperature::Kind::Polynomial: {
      double acc = 0.0;
      const auto& c = ts.coefficients();
      for (std::size_t n = 0; n < c.size(); ++n) {
        if (c[n] == 0.0) continue;
        acc += c[n] * std::tgamma(n + 1.0) / std::tgamma(n + 0.5) * std::pow(t, n - 0.5);
      }
      return acc;
    }
    case SurfaceTemperature::Kind::Exponential: {
      const double b = ts.rate();
      if (b >= 0.0) {
        const double growth = b > 0.0 ? std::sqrt(b) * std::exp(b * t) * std::erf(std::sqrt(b * t)) : 0.0;
        return ts.amplitude() * (growth + 1.0 / std::sqrt(std::numbers::pi * t));
      }
      return numeric_half_derivative(ts, t);
    }
    case SurfaceTemperature::Kind::Custom:
      return numeric_half_derivative(ts, t);
  }
  return 0.0;
}

double exact_flux(const SurfaceTemperature& ts, double t, FluxRoute route) {
  require_positive_time(t);
  const double end = ts(t);
  if (route == FluxRoute::Auto) route = end == 0.0 ? FluxRoute::Direct : FluxRoute::Regularized;
  if (route == FluxRoute::Direct) {
    if (end != 0.0) {
      throw DivergentIntegralError(
          "flux integral diverges: T_s(t) != 0, use the regularized route");
    }
    require_endpoint_decay(ts, t, 1.5);
    return -history_integral(ts, t, 1.5) / (2.0 * kSqrtPi);
  }
  const double tail = integrate_smooth(
                          [&](double u) {
                                         return 2.0 * (ts(t - u * u) - end) / (u * u);
                          },
                          0.0, std::sqrt(t), 1e-12, kShallow)
                          .value;
  return -(tail - 2.0 * end / std::sqrt(t)) / (2.0 * kSqrtPi);
}

double duhamel_solution(const SurfaceTemperature& ts, double x, double t) {
  if (x < 0.0) throw std::invalid_argument("x must be >= 0");
  require_positive_time(t);
  if (x == 0.0) return ts(t);
  const double a = x / (2.0 * std::sqrt(t));
  if (a > 27.0) return 0.0;
  const double x2 = x * x;
  const auto r = integrate_to_infinity(
      [&](double xi) {
        const double w = std::exp(-xi * xi);
        return w == 0.0 ? 0.0 : ts(t - x2 / (4.0 * xi * xi)) * w;
      },
      a, 1e-13);
  return 2.0 / kSqrtPi * r.value;
}

double singular_history_integral(const SurfaceTemperature& ts, double t, double a) {
  require_positive_time(t);
  require_endpoint_decay(ts, t, a);
  return history_integral(ts, t, a);
}

double spatial_derivative_integral(const SurfaceTemperature& ts, double x, double t, int k) {
  if (k < 1 || k > 7) throw std::invalid_argument("derivative order must be in 1..7");
  if (x < 0.0) throw std::invalid_argument("x must be >= 0");
  require_positive_time(t);
  const double sign = (k + 1) % 2 == 0 ? 1.0 : -1.0;  // (-1)^{k+1}
  if (x == 0.0) {
    if (k % 2 == 0) return ts.derivative(t, k / 2);
    const double c = -sign * std::pow(2.0, -(k + 1)) * hermite(k + 1, 0.0) / kSqrtPi;
    if (k == 1) return -exact_flux(ts, t);
    return c * singular_history_integral(ts, t, (k + 2) / 2.0);
  }
  const auto r = integrate_singular(
      [&](double s) {
        const double u = x / (2.0 * std::sqrt(s));
        if (u > 38.0) return 0.0;
        const double kernel = -sign / (kSqrtPi * std::sqrt(s)) *
                              std::pow(2.0 * std::sqrt(s), -(k + 1)) * hermite(k + 1, u) *
                              std::exp(-u * u);
        return ts(t - s) * kernel;
      },
      0.0, t, 1e-11);
  return r.value;
}

double gaussian_moment(double x, double t, int n) {
  if (n < 0 || n > 8 || n % 2 != 0) throw std::invalid_argument("power must be even, 0..8");
  require_positive_time(t);
  const double a = x / (2.0 * std::sqrt(t));
  const double e = std::exp(-a * a);
  double m = 0.5 * kSqrtPi * std::erfc(a);
  for (int p = 2; p <= n; p += 2) m = 0.5 * std::pow(a, p - 1) * e + 0.5 * (p - 1) * m;
  return m;
}

double gaussian_moment_quadrature(double x, double t, int n) {
  require_positive_time(t);
  const double a = x / (2.0 * std::sqrt(t));
  return integrate_to_infinity(
             [n](double xi) {
               const double w = std::exp(-xi * xi);
               return w == 0.0 ? 0.0 : std::pow(xi, n) * w;
             },
             a, 1e-14)
      .value;
}

double gaussian_combination(double x, double t) {
  require_positive_time(t);
  return x / (16.0 * std::sqrt(t)) * (x * x / (2.0 * t) - 3.0) * std::exp(-x * x / (4.0 * t));
}

}  // namespace taylorfd
