#include "taylorfd/problems/advection.hpp"

#include "taylorfd/field/derivative.hpp"

namespace taylorfd {

Field advection_rhs(const Field& u, int accuracy) { return apply_derivative(u, 1, 0, accuracy); }

BoundaryValue linear_inflow() {
  return [](const Point&, double t, int level) {
    if (level == 0) return t;
    return level == 1 ? 1.0 : 0.0;
  };
}

std::vector<Field> AdvectionProblem::levels(const Field& u, double t, int q) const {
  std::vector<Field> out;
  Field prev = fill_ghosts(u, bc, t, 0);
  for (int k = 1; k <= q; ++k) {
    Field g = advection_rhs(prev, accuracy);
    fill_ghosts_in_place(g, bc, t, k);
    out.push_back(g);
    prev = std::move(g);
  }
  return out;
}

}  // namespace taylorfd
