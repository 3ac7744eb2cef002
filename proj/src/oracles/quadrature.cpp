#include "taylorfd/oracles/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

namespace taylorfd {

namespace {

void check(const QuadratureResult& r, double tol, const char* rule) {
  const double floor = 1e-300;
  if (!std::isfinite(r.value) || r.error > 1e3 * tol * r.l1 + floor) {
    throw QuadratureError(std::string(rule) + " quadrature did not converge", r.error);
  }
}

}  // namespace

QuadratureResult integrate_singular(const Integrand& f, double a, double b, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  QuadratureResult r;
  try {
    r.value = rule.integrate(f, a, b, tol, &r.error, &r.l1);
  } catch (const std::domain_error& e) {
    throw QuadratureError(e.what(), INFINITY);
  }
  check(r, tol, "tanh-sinh");
  return r;
}

QuadratureResult integrate_smooth(const Integrand& f, double a, double b, double tol,
                                  int max_depth) {
  QuadratureResult r;
  r.value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol,
                                                                            &r.error, &r.l1);
  check(r, tol, "Gauss-Kronrod");
  return r;
}

QuadratureResult integrate_to_infinity(const Integrand& f, double a, double tol) {
  thread_local boost::math::quadrature::exp_sinh<double> rule(9);
  QuadratureResult r;
  try {
    r.value = rule.integrate(f, a, std::numeric_limits<double>::infinity(), tol, &r.error, &r.l1);
  } catch (const std::domain_error& e) {
    throw QuadratureError(e.what(), INFINITY);
  }
  check(r, tol, "exp-sinh");
  return r;
}

}  // namespace taylorfd
