#pragma once

#include <functional>
#include <string>
#include <vector>

namespace taylorfd {

// Surface temperature history T_s(tau) of the half-space heat problem.
// Polynomial and exponential histories know their derivatives and admit
// closed-form half-derivatives; custom ones carry whatever the caller supplies.
class SurfaceTemperature {
 public:
  enum class Kind { Polynomial, Exponential, Custom };

  static SurfaceTemperature constant(double c);
  // sum_n coeffs[n] tau^n
  static SurfaceTemperature polynomial(std::vector<double> coeffs);
  // amplitude * exp(rate * tau)
  static SurfaceTemperature exponential(double amplitude, double rate);
  // derivative(tau, k) is optional; without it only k = 0 is available.
  static SurfaceTemperature custom(std::function<double(double)> value,
                                   std::function<double(double, int)> derivative = {});

  double operator()(double tau) const { return derivative(tau, 0); }
  // k-th derivative; throws std::domain_error when a custom history lacks it.
  double derivative(double tau, int k) const;
  bool has_derivatives() const { return kind_ != Kind::Custom || static_cast<bool>(deriv_); }

  Kind kind() const { return kind_; }
  const std::vector<double>& coefficients() const { return coeffs_; }
  double amplitude() const { return amplitude_; }
  double rate() const { return rate_; }

 private:
  Kind kind_ = Kind::Polynomial;
  std::vector<double> coeffs_;
  double amplitude_ = 0.0;
  double rate_ = 0.0;
  std::function<double(double)> value_;
  std::function<double(double, int)> deriv_;
};

}  // namespace taylorfd
