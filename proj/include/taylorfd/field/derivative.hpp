#pragma once

#include <stdexcept>

#include "taylorfd/field/field.hpp"

namespace taylorfd {

class GhostError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// k-th derivative of f along `axis` with accuracy order p.
//
// Nodes whose central stencil fits inside the usable data (physical nodes
// plus Filled ghosts) get the central stencil; the rest get a shifted
// stencil of k + p points, which has the same order of accuracy. The
// result has stale ghosts and f is not modified.
//
// Throws GhostError if a face of `axis` is Unfilled and StencilError if the
// central stencil is wider than the grid's ghost layer.
Field apply_derivative(const Field& f, int k, int axis, int p);

// Sum of second derivatives over the active axes.
Field laplacian(const Field& f, int p);

}  // namespace taylorfd
