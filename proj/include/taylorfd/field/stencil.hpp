#pragma once

#include <span>
#include <stdexcept>
#include <vector>

namespace taylorfd {

class StencilError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Widest stencil (in points) the library will build. A Taylor order that
// needs more than this is asking for a grid that is too coarse.
inline constexpr int kMaxStencilPoints = 17;

// Finite-difference weights for unit spacing; scale by h^-k when applying.
struct StencilSpec {
  int derivative_order = 0;
  int accuracy_order = 0;
  std::vector<int> offsets;
  std::vector<double> weights;
  // The same weights before rounding to double; used when applying.
  std::vector<long double> exact_weights;

  int first_offset() const { return offsets.front(); }
  int last_offset() const { return offsets.back(); }
  int size() const { return static_cast<int>(offsets.size()); }
};

// Weights of the derivative of order k at x0 from values at the given
// abscissae (Fornberg's recursion, evaluated in extended precision).
std::vector<long double> fornberg_weights(int k, std::span<const long double> nodes,
                                          long double x0);

// Half-width of the central stencil for derivative order k at even accuracy p.
int central_half_width(int k, int p);

// Central stencil of order k and accuracy p (p even, >= 2).
StencilSpec make_stencil(int k, int p);

// Stencil of order k and accuracy p over k + p consecutive points starting
// at first_offset relative to the evaluation node.
StencilSpec make_shifted_stencil(int k, int p, int first_offset);

// Cached lookups of the two builders above. References stay valid for the
// life of the process; safe to call from several threads.
const StencilSpec& central_stencil(int k, int p);
const StencilSpec& shifted_stencil(int k, int p, int first_offset);

}  // namespace taylorfd
