#pragma once

// Unsteady convection-diffusion of temperature around a unit sphere in Stokes
// flow, axisymmetric, on the (rho, theta) grid:
//   T_tau = L T,
//   L = d_rr + [2/r - (Pe/2) cos th (1 - 3/(2r) + 1/(2r^3))] d_r
//     + (1/r^2) d_thth + [cot th / r^2 + (Pe sin th / (2r)) (1 - 3/(4r) - 1/(4r^3))] d_th
// with T(1, th, tau) = T_s(th, tau), T(rho_max) = 0, T(tau = 0) = 0 and
// symmetry at th = 0, pi.

#include <functional>
#include <map>
#include <vector>

#include "taylorfd/engine/engine.hpp"
#include "taylorfd/field/boundary.hpp"
#include "taylorfd/field/field.hpp"
#include "taylorfd/field/grid.hpp"

namespace taylorfd {

// T_s and its tau-derivatives: value(theta, tau, k) = d^k T_s / d tau^k.
using SphereSurface = std::function<double(double theta, double tau, int level)>;

// |cos th| exp(rate tau), derivatives rate^k T_s.
SphereSurface exponential_surface(double rate = 100.0);

struct SphereProblem {
  double pe = 1.0;
  double rho_max = 12.0;
  int n_rho = 220;
  int n_theta = 40;
  int accuracy = 2;
  SphereSurface surface = exponential_surface();

  void validate() const;
  SphericalGrid2D grid() const;
  BoundarySet boundaries() const;
};

// L T for a field with filled ghosts (fill_ghosts with boundaries()). At the
// poles cot th d_th T is replaced by its limit d_thth T. Values on the
// Dirichlet faces are whatever the one-sided stencils give; callers overwrite
// them.
Field sphere_rhs(const Field& T, const SphereProblem& problem);

// Engine adapter. Level k = L(level k-1), where level k-1 carries
// d^{k-1}T_s/dtau^{k-1} on the sphere and 0 at rho_max before L is applied.
class SphereCascade {
 public:
  using State = Field;

  explicit SphereCascade(SphereProblem problem);

  int max_order() const { return 5; }
  std::vector<Field> levels(const Field& T, double tau, int q) const;
  void enforce_boundary(Field& T, double tau) const { enforce_dirichlet(T, bc_, tau); }

  const SphereProblem& problem() const { return problem_; }
  const BoundarySet& boundaries() const { return bc_; }
  // L applied after filling ghosts with the level-`level` boundary data.
  Field apply(const Field& T, double tau, int level) const;

 private:
  SphereProblem problem_;
  BoundarySet bc_;
  Field a_rho_, a_theta_, b_theta_;  // coefficients of d_r, d_th, d_thth
};

// T = 0 with the surface datum at tau on the sphere.
Field sphere_initial(const SphereCascade& cascade, double tau = 0.0);

// Reference explicit Euler step T + dt L T built from the same stencils.
Field sphere_euler_step(const SphereCascade& cascade, const Field& T, double tau, double dt);

// Value at (r, th) by bilinear interpolation; th in (pi, 2 pi) is read at
// 2 pi - th.
double sphere_sample(const Field& T, const SphericalGrid2D& grid, double r, double theta);

struct TableCase {
  SphereProblem problem;
  double dt = 1e-4;
  double tau_end = 0.03;
  std::vector<int> orders{1, 2, 3};
  std::vector<double> radii{1.0, 2.0, 5.0, 8.0};
  std::vector<double> angles;  // defaults to k pi / 5, k = 0..7

  int steps() const;
  std::vector<double> output_angles() const;
};

struct TableResult {
  std::vector<double> radii;
  std::vector<double> angles;
  double tau = 0.0;
  // values[order][ir][ia]
  std::map<int, std::vector<std::vector<double>>> values;
  std::map<int, double> seconds;  // wall time per order
  std::map<int, Field> fields;
};

// Marches each order to tau_end and samples the lattice. Instability surfaces
// as InstabilityError carrying the order and step.
TableResult run_table_case(const TableCase& config);

}  // namespace taylorfd
