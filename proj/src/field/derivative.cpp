#include "taylorfd/field/derivative.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "taylorfd/field/stencil.hpp"

namespace taylorfd {

Field apply_derivative(const Field& f, int k, int axis, int p) {
  const Grid& grid = f.grid();
  if (axis < 0 || axis >= grid.dims()) {
    throw std::invalid_argument("axis " + std::to_string(axis) + " is not active on this grid");
  }
  const GhostState lo_state = f.ghost_state(axis, Face::Lower);
  const GhostState hi_state = f.ghost_state(axis, Face::Upper);
  if (lo_state == GhostState::Unfilled || hi_state == GhostState::Unfilled) {
    throw GhostError("ghost layer not populated on axis " + std::to_string(axis));
  }

  const StencilSpec& central = central_stencil(k, p);
  const int r = -central.first_offset();
  const int g = grid.ghost_width();
  if (r > g) {
    throw StencilError("derivative order " + std::to_string(k) +
                       " needs a ghost width of " + std::to_string(r) + ", grid has " +
                       std::to_string(g));
  }

  const int n = grid.n_nodes(axis);
  const int lo = lo_state == GhostState::Filled ? -g : 0;
  const int hi = hi_state == GhostState::Filled ? n - 1 + g : n - 1;

  std::vector<const StencilSpec*> plan(n);
  for (int i = 0; i < n; ++i) {
    if (i - r >= lo && i + r <= hi) {
      plan[i] = &central;
      continue;
    }
    const int npts = k + p;
    if (npts > hi - lo + 1) {
      throw StencilError("axis " + std::to_string(axis) + " has too few nodes for a one-sided stencil");
    }
    const int start = (i - r < lo) ? lo : hi - npts + 1;
    plan[i] = &shifted_stencil(k, p, start - i);
  }

  const double scale = 1.0 / std::pow(grid.spacing(axis), k);
  const std::ptrdiff_t stride = f.stride(axis);
  const auto src = f.storage();

  Field out(grid, Quantity::Derivative);
  auto dst = out.storage();
  f.for_each_node([&](int i, int j, int kk) {
    const int along = axis == 0 ? i : (axis == 1 ? j : kk);
    const StencilSpec& s = *plan[along];
    const std::size_t base = f.offset(i, j, kk);
    // Differences against the evaluation node: the weights sum to zero, so
    // this is the same sum and constants map to an exact zero.
    const double centre = src[base];
    long double acc = 0.0L;
    for (int m = 0; m < s.size(); ++m) {
      if (s.offsets[m] == 0) continue;
      acc += s.exact_weights[m] * (src[base + s.offsets[m] * stride] - centre);
    }
    dst[base] = static_cast<double>(acc) * scale;
  });
  return out;
}

Field laplacian(const Field& f, int p) {
  Field out = apply_derivative(f, 2, 0, p);
  for (int a = 1; a < f.grid().dims(); ++a) out.add_scaled(apply_derivative(f, 2, a, p), 1.0);
  return out;
}

}  // namespace taylorfd
