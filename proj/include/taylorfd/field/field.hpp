#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "taylorfd/field/grid.hpp"

namespace taylorfd {

enum class Quantity : std::uint8_t {
  Generic,
  VelocityX,
  VelocityY,
  VelocityZ,
  Pressure,
  Temperature,
  Derivative,
};

enum class Face : std::uint8_t { Lower = 0, Upper = 1 };

// What a derivative operator may assume about the ghost layer of one face.
//   Unfilled: stale data, derivatives are refused.
//   Filled:   ghost values are valid, central stencils may reach into them.
//   OneSided: ghosts must not be read; boundary-adjacent nodes use one-sided
//             stencils over physical nodes only.
enum class GhostState : std::uint8_t { Unfilled, Filled, OneSided };

class Field {
 public:
  Field() = default;
  explicit Field(Grid grid, Quantity quantity = Quantity::Generic,
                 double value = 0.0);

  static Field sample(const Grid& grid, const std::function<double(const Point&)>& fn,
                      Quantity quantity = Quantity::Generic);

  const Grid& grid() const { return grid_; }
  Quantity quantity() const { return quantity_; }
  void set_quantity(Quantity q) { quantity_ = q; }

  // Node access; indices may address the ghost layer (i in [-g, n + g)).
  double& operator()(int i, int j = 0, int k = 0) { return data_[offset(i, j, k)]; }
  double operator()(int i, int j = 0, int k = 0) const { return data_[offset(i, j, k)]; }

  std::size_t offset(int i, int j = 0, int k = 0) const {
    return static_cast<std::size_t>((i + grid_.ghost(0)) + strides_[1] * (j + grid_.ghost(1)) +
                                    strides_[2] * (k + grid_.ghost(2)));
  }
  std::ptrdiff_t stride(int axis) const { return strides_[axis]; }

  std::span<double> storage() { return data_; }
  std::span<const double> storage() const { return data_; }

  GhostState ghost_state(int axis, Face face) const {
    return ghosts_[2 * axis + static_cast<int>(face)];
  }
  void set_ghost_state(int axis, Face face, GhostState s) {
    ghosts_[2 * axis + static_cast<int>(face)] = s;
  }
  void invalidate_ghosts();

  // Visits every physical node as fn(i, j, k).
  template <class Fn>
  void for_each_node(Fn&& fn) const {
    const int n0 = grid_.n_nodes(0), n1 = grid_.n_nodes(1), n2 = grid_.n_nodes(2);
    for (int k = 0; k < n2; ++k)
      for (int j = 0; j < n1; ++j)
        for (int i = 0; i < n0; ++i) fn(i, j, k);
  }

  void fill(double value);
  // this += a * x over physical nodes; ghosts become stale.
  Field& add_scaled(const Field& x, double a);
  Field& scale(double a);

  double max_abs() const;
  bool all_finite() const;
  double sum() const;  // over physical nodes

 private:
  Grid grid_;
  Quantity quantity_ = Quantity::Generic;
  std::vector<double> data_;
  std::array<std::ptrdiff_t, 3> strides_{1, 1, 1};
  std::array<GhostState, 6> ghosts_{};
};

double max_abs_diff(const Field& a, const Field& b);

// Nodewise helpers over physical nodes. Results carry stale ghosts.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field hadamard(const Field& a, const Field& b);

// Nodewise product over the whole storage, ghosts included. A face is Filled
// only when it is Filled in both inputs; if either side is OneSided the
// product is too. Products of reflected, wrapped or extrapolated ghosts are
// the corresponding ghosts of the product to the same order.
Field hadamard_with_ghosts(const Field& a, const Field& b);

}  // namespace taylorfd
