#pragma once

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>

#include "taylorfd/field/field.hpp"

namespace taylorfd {

class BoundaryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class BoundaryKind { Dirichlet, Neumann, Symmetry, Extrapolation, OneSided, Periodic };

// Boundary datum as a function of the boundary point, time and time-derivative
// level: value(p, t, k) is d^k/dt^k of the datum. Level 0 is the datum itself;
// Taylor cascades ask for higher levels when filling ghosts of G_k.
using BoundaryValue = std::function<double(const Point&, double, int)>;

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Symmetry;
  // Dirichlet: prescribed value. Neumann: outward normal derivative.
  BoundaryValue value;
  // Extrapolation polynomial degree (also used for the informational ghosts
  // of a Dirichlet face).
  int degree = 4;

  static BoundaryCondition dirichlet(BoundaryValue v);
  // Time-independent value: c at level 0, zero at every higher level.
  static BoundaryCondition dirichlet(double c);
  static BoundaryCondition neumann(BoundaryValue g);
  static BoundaryCondition neumann(double g);
  static BoundaryCondition symmetry();
  static BoundaryCondition extrapolation(int degree);
  // No datum: boundary nodes keep their computed values and derivatives use
  // one-sided stencils (outflow faces, products of fields).
  static BoundaryCondition one_sided();
  static BoundaryCondition periodic();
};

// One optional condition per face. Periodic axes wrap regardless of what is
// stored here; a non-periodic condition on a periodic axis is rejected.
class BoundarySet {
 public:
  BoundarySet& set(int axis, Face face, BoundaryCondition bc);
  BoundarySet& set_axis(int axis, const BoundaryCondition& bc);
  const std::optional<BoundaryCondition>& at(int axis, Face face) const {
    return faces_[2 * axis + static_cast<int>(face)];
  }

 private:
  std::array<std::optional<BoundaryCondition>, 6> faces_{};
};

// Populates the ghost layer of every active axis for physical transverse
// nodes. Dirichlet faces also overwrite the boundary node with the datum and
// mark the face OneSided; all other faces become Filled.
//
// Throws BoundaryError when a bounded face has no condition.
void fill_ghosts_in_place(Field& f, const BoundarySet& bc, double t = 0.0, int level = 0);
Field fill_ghosts(Field f, const BoundarySet& bc, double t = 0.0, int level = 0);

// Overwrites only the Dirichlet boundary nodes, leaving ghosts alone.
void enforce_dirichlet(Field& f, const BoundarySet& bc, double t, int level = 0);

}  // namespace taylorfd
