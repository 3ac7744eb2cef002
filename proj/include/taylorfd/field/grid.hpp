#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace taylorfd {

using Point = std::array<double, 3>;

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One coordinate direction of a structured grid. A periodic axis stores
// n_cells distinct nodes (the node at max coincides with min); a bounded
// axis stores n_cells + 1 nodes including both end points.
struct Axis {
  double min = 0.0;
  double max = 1.0;
  int n_cells = 1;
  bool periodic = false;

  double spacing() const { return (max - min) / n_cells; }
  int n_nodes() const { return periodic ? n_cells : n_cells + 1; }
  double coordinate(int i) const { return min + i * spacing(); }

  bool operator==(const Axis&) const = default;
};

// Uniform Cartesian grid of dimension 1..3 with a ghost layer of fixed width
// on every face of every active axis.
class Grid {
 public:
  static constexpr int kMaxDims = 3;

  Grid() = default;
  Grid(std::vector<Axis> axes, int ghost_width);

  static Grid line(double x_min, double x_max, int n_cells, int ghost_width,
                   bool periodic = false);

  int dims() const { return dims_; }
  int ghost_width() const { return ghost_; }
  const Axis& axis(int a) const { return axes_.at(a); }
  double spacing(int a) const { return axes_.at(a).spacing(); }
  int n_nodes(int a) const { return a < dims_ ? axes_[a].n_nodes() : 1; }
  std::size_t node_count() const;

  // Storage extent along an axis, ghosts included (1 for inactive axes).
  int extent(int a) const {
    return a < dims_ ? axes_[a].n_nodes() + 2 * ghost_ : 1;
  }
  std::size_t storage_size() const;
  int ghost(int a) const { return a < dims_ ? ghost_ : 0; }

  Point coordinates(int i, int j = 0, int k = 0) const;

  bool operator==(const Grid&) const = default;

 private:
  std::array<Axis, kMaxDims> axes_{};
  int dims_ = 0;
  int ghost_ = 0;
};

// Ghost width that fits a central stencil for derivative order k at accuracy p.
int required_ghost_width(int max_derivative_order, int accuracy_order);

// (rho, theta) grid for axisymmetric problems around a unit sphere:
// axis 0 is rho in [1, rho_max], axis 1 is theta in [0, pi].
class SphericalGrid2D {
 public:
  SphericalGrid2D(double rho_max, int n_rho, int n_theta, int ghost_width);

  const Grid& grid() const { return grid_; }
  double rho_min() const { return 1.0; }
  double rho_max() const { return grid_.axis(0).max; }
  int n_rho() const { return grid_.axis(0).n_cells; }
  int n_theta() const { return grid_.axis(1).n_cells; }
  double h_rho() const { return grid_.spacing(0); }
  double h_theta() const { return grid_.spacing(1); }
  double rho(int i) const { return grid_.axis(0).coordinate(i); }
  // Pole nodes are pinned to exactly 0 and pi.
  double theta(int j) const;

 private:
  Grid grid_;
};

}  // namespace taylorfd
