#pragma once

#include "taylorfd/oracles/surface.hpp"

namespace taylorfd {

// Fluxes are reported as heat flowing into the half-space, -dT/dx at x = 0;
// positive for a heating history.

// Half-derivative of T_s at t. Closed form for polynomial and growing
// exponential histories, otherwise the weakly singular integral
// int_0^t T_s(tau) (t - tau)^{-1/2} dtau (after tau = t - u^2) differentiated
// in t by Richardson-extrapolated central differences.
double fractional_flux(const SurfaceTemperature& ts, double t);

enum class FluxRoute { Auto, Direct, Regularized };

// -1/(2 sqrt(pi)) int_0^t T_s(tau) (t - tau)^{-3/2} dtau, read as heat into the
// domain. The direct integral exists only when T_s(t) = 0; otherwise Direct
// throws DivergentIntegralError and Regularized/Auto subtract T_s(t) and add
// back its finite part -2 T_s(t)/sqrt(t).
double exact_flux(const SurfaceTemperature& ts, double t, FluxRoute route = FluxRoute::Auto);

// T(x, t) = (2/sqrt(pi)) int_{x/(2 sqrt t)}^inf T_s(t - x^2/(4 xi^2)) e^{-xi^2} dxi.
double duhamel_solution(const SurfaceTemperature& ts, double x, double t);

// d^k T/dx^k of the Duhamel solution, k = 1..7, by integrating T_s against
// the k-th x-derivative of the kernel x/(2 sqrt(pi) s^{3/2}) e^{-x^2/(4s)},
// which is -(1/sqrt(pi s)) (-1)^{k+1} (2 sqrt s)^{-(k+1)} H_{k+1}(x/(2 sqrt s))
// e^{-x^2/(4s)} with H the physicists' Hermite polynomials.
// At x = 0, odd k use the reduced kernels (convergent only when T_s vanishes
// fast enough at tau = t, else DivergentIntegralError) and even k = 2m return
// the exact limit d^m T_s/dt^m (t).
double spatial_derivative_integral(const SurfaceTemperature& ts, double x, double t, int k);

// I_a = int_0^t T_s(tau) (t - tau)^{-a} dtau; throws DivergentIntegralError
// when T_s does not vanish fast enough at tau = t.
double singular_history_integral(const SurfaceTemperature& ts, double t, double a);

// int_{x/(2 sqrt t)}^inf xi^n e^{-xi^2} dxi for even n <= 8 in closed form.
double gaussian_moment(double x, double t, int n);
// Same integral by brute-force quadrature.
double gaussian_moment_quadrature(double x, double t, int n);
// int_{a}^inf 2 (t^2 xi^4/x^4) e^{-xi^2} (4 xi^4 - 20 xi^2 + 15) dxi
//   = (x/(16 sqrt t)) (x^2/(2t) - 3) e^{-x^2/(4t)},  x > 0.
double gaussian_combination(double x, double t);

}  // namespace taylorfd
