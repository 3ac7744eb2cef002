#include "taylorfd/oracles/surface.hpp"

#include <cmath>
#include <stdexcept>

namespace taylorfd {

SurfaceTemperature SurfaceTemperature::constant(double c) { return polynomial({c}); }

SurfaceTemperature SurfaceTemperature::polynomial(std::vector<double> coeffs) {
  SurfaceTemperature s;
  s.kind_ = Kind::Polynomial;
  s.coeffs_ = std::move(coeffs);
  if (s.coeffs_.empty()) s.coeffs_.push_back(0.0);
  return s;
}

SurfaceTemperature SurfaceTemperature::exponential(double amplitude, double rate) {
  SurfaceTemperature s;
  s.kind_ = Kind::Exponential;
  s.amplitude_ = amplitude;
  s.rate_ = rate;
  return s;
}

SurfaceTemperature SurfaceTemperature::custom(std::function<double(double)> value,
                                              std::function<double(double, int)> derivative) {
  if (!value) throw std::invalid_argument("custom surface history needs a value function");
  SurfaceTemperature s;
  s.kind_ = Kind::Custom;
  s.value_ = std::move(value);
  s.deriv_ = std::move(derivative);
  return s;
}

double SurfaceTemperature::derivative(double tau, int k) const {
  if (k < 0) throw std::invalid_argument("negative derivative order");
  switch (kind_) {
    case Kind::Polynomial: {
      // Horner on the k-th derivative's coefficients.
      double acc = 0.0;
      for (int n = static_cast<int>(coeffs_.size()) - 1; n >= k; --n) {
        double falling = 1.0;
        for (int m = 0; m < k; ++m) falling *= n - m;
        acc = acc * tau + falling * coeffs_[n];
      }
      return acc;
    }
    case Kind::Exponential:
      return amplitude_ * std::pow(rate_, k) * std::exp(rate_ * tau);
    case Kind::Custom:
      if (k == 0) return value_(tau);
      if (!deriv_) throw std::domain_error("surface history has no derivative information");
      return deriv_(tau, k);
  }
  return 0.0;
}

}  // namespace taylorfd
