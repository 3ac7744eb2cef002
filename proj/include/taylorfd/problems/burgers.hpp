#pragma once

#include <vector>

#include "taylorfd/field/boundary.hpp"
#include "taylorfd/field/field.hpp"

namespace taylorfd {

// nu D2 U - U D1 U. U must have its ghosts filled.
Field burgers_rhs(const Field& u, double nu, int accuracy);

// nu D2 U - D1(U^2 / 2), the flux form. The same as burgers_rhs up to
// truncation error; this is the form the cascade differentiates, so every
// level is an exact time derivative of one semi-discrete system.
Field burgers_rhs_conservative(const Field& u, double nu, int accuracy);

// nu D2 f - D1(f U) with f = burgers_rhs(U); both inputs ghost-filled.
Field burgers_level2(const Field& u, const Field& f, double nu, int accuracy);

// The second level expanded in derivatives of U alone:
//   nu^2 U_xxxx - 4 nu U_x U_xx - 2 nu U U_xxx + 2 U U_x^2 + U^2 U_xx.
// Used as a cross-check of the compact form.
Field burgers_level2_expanded(const Field& u, double nu, int accuracy);

// Levels 1..q of the Burgers cascade. For k >= 0
//   G_{k+1} = nu D2 G_k - D1[ 1/2 sum_j C(k,j) G_j G_{k-j} ],
// the time derivatives of the flux form U U_x = (U^2/2)_x. Level 1 is
// burgers_rhs_conservative and level 2 equals burgers_level2(U, level 1). Each level is
// ghost-filled with `bc` at time derivative level k before use.
std::vector<Field> burgers_levels_leibniz(const Field& u, double nu, int q, const BoundarySet& bc,
                                          double t, int accuracy);

struct BurgersProblem {
  using State = Field;

  double nu = 1.0;
  BoundarySet bc;
  int accuracy = 2;

  int max_order() const { return 5; }
  std::vector<Field> levels(const Field& u, double t, int q) const;
  void enforce_boundary(Field& u, double t) const { enforce_dirichlet(u, bc, t); }
};

// One explicit Euler step U + dt burgers_rhs_conservative(U), written
// independently of the engine.
Field burgers_euler_step(const Field& u, double nu, double dt, const BoundarySet& bc, double t,
                         int accuracy);

}  // namespace taylorfd
