#pragma once

#include <vector>

#include "taylorfd/field/boundary.hpp"
#include "taylorfd/field/field.hpp"

namespace taylorfd {

// du/dt = du/dx. Returns D1 u; u must have its ghosts filled.
Field advection_rhs(const Field& u, int accuracy);

// Inflow datum u(0, t) = t with its time derivatives.
BoundaryValue linear_inflow();

struct AdvectionProblem {
  using State = Field;

  BoundarySet bc;
  int accuracy = 2;

  int max_order() const { return 5; }
  // G_k = D1 G_{k-1}, each level ghost-filled at time-derivative level k.
  std::vector<Field> levels(const Field& u, double t, int q) const;
  void enforce_boundary(Field& u, double t) const { enforce_dirichlet(u, bc, t); }
};

}  // namespace taylorfd
