#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "taylorfd/field/boundary.hpp"
#include "taylorfd/problems/advection.hpp"
#include "taylorfd/problems/burgers.hpp"

namespace testsupport {

using namespace taylorfd;

inline Grid periodic_line(int n, int ghost) {
  return Grid::line(0.0, 2.0 * std::numbers::pi, n, ghost, true);
}

inline BurgersProblem periodic_burgers(double nu, int accuracy) {
  BurgersProblem p;
  p.nu = nu;
  p.accuracy = accuracy;
  p.bc.set_axis(0, BoundaryCondition::periodic());
  return p;
}

inline AdvectionProblem linear_advection(int accuracy) {
  AdvectionProblem p;
  p.accuracy = accuracy;
  p.bc.set(0, Face::Lower, BoundaryCondition::dirichlet(linear_inflow()));
  p.bc.set(0, Face::Upper, BoundaryCondition::one_sided());
  return p;
}

// Least-squares slope of log(err) against log(dt).
inline double fitted_slope(const std::vector<double>& dt, const std::vector<double>& err) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(dt.size());
  for (std::size_t i = 0; i < dt.size(); ++i) {
    const double x = std::log(dt[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace testsupport
