#pragma once

#include <stdexcept>
#include <vector>

#include "taylorfd/field/boundary.hpp"
#include "taylorfd/field/field.hpp"

namespace taylorfd {

class PoissonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class PoissonSolver { SOR, ConjugateGradient };

enum class LaplacianStencil {
  // 3 points per axis, (p_{i-1} - 2 p_i + p_{i+1}) / h^2.
  Compact,
  // D1 applied twice, (p_{i-2} - 2 p_i + p_{i+2}) / (4 h^2). Consistent with a
  // central-difference divergence of a central-difference gradient; periodic
  // axes only. On an even node count it decouples into parity classes, each
  // with its own constant null vector.
  Wide,
};

// Laplacian(p) = rhs on rhs.grid(). Faces take Dirichlet, Neumann (outward
// normal derivative), Symmetry or Periodic conditions; the data are read at
// t = 0, level 0.
struct PoissonProblem {
  Field rhs;
  BoundarySet bc;
  double tolerance = 1e-9;  // on max |L_h p - rhs| over unknown nodes
  int max_iterations = 50000;
  PoissonSolver solver = PoissonSolver::SOR;
  double omega = 1.7;
  LaplacianStencil stencil = LaplacianStencil::Compact;
};

struct PoissonResult {
  Field pressure;
  // The right-hand side actually solved: rhs minus the compatibility shift
  // when the problem has no Dirichlet face.
  Field rhs;
  double residual = 0.0;  // from the assembled matrix
  double recheck = 0.0;   // from fill_ghosts + derivative stencils
  int iterations = 0;
  bool converged = false;
  bool singular = false;  // no Dirichlet face: p is normalized to zero mean
  double compatibility_shift = 0.0;  // largest shift removed from the rhs
};

// Non-convergence is not an exception: the best iterate comes back with
// converged == false.
PoissonResult poisson_solve(const PoissonProblem& problem);

// max |L_h p - rhs| over the non-Dirichlet nodes, evaluated with
// fill_ghosts and apply_derivative; independent of the assembled matrix.
double field_residual(const PoissonProblem& problem, const Field& pressure, const Field& rhs);

// sum_i D1 v_i along axis i. The components must have their ghosts filled.
Field divergence(const std::vector<Field>& v, int accuracy);

}  // namespace taylorfd
