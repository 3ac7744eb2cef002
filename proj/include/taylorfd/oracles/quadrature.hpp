#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace taylorfd {

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double estimate)
      : std::runtime_error(what + " (error estimate " + std::to_string(estimate) + ")"),
        estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

class DivergentIntegralError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double l1 = 0.0;
};

using Integrand = std::function<double(double)>;

// Double-exponential rule on [a, b]; tolerates integrable endpoint
// singularities. Throws QuadratureError when the error estimate exceeds
// tol * L1 (plus a tiny absolute floor).
QuadratureResult integrate_singular(const Integrand& f, double a, double b, double tol = 1e-12);

// Adaptive Gauss-Kronrod on [a, b] for smooth integrands.
QuadratureResult integrate_smooth(const Integrand& f, double a, double b, double tol = 1e-12,
                                  int max_depth = 20);

// exp-sinh rule on [a, inf).
QuadratureResult integrate_to_infinity(const Integrand& f, double a, double tol = 1e-12);

}  // namespace taylorfd
