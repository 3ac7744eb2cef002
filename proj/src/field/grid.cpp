#include "taylorfd/field/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace taylorfd {

Grid::Grid(std::vector<Axis> axes, int ghost_width) {
  if (axes.empty() || axes.size() > kMaxDims) {
    throw GridError("grid must have 1 to 3 axes");
  }
  if (ghost_width < 0) throw GridError("ghost width must be non-negative");
  for (std::size_t a = 0; a < axes.size(); ++a) {
    const Axis& ax = axes[a];
    if (ax.n_cells < 1) throw GridError("axis needs at least one cell");
    if (!(ax.max > ax.min) || !std::isfinite(ax.max - ax.min)) {
      throw GridError("axis " + std::to_string(a) + " must have max > min");
    }
    if (ax.periodic && ax.n_cells < 2 * ghost_width) {
      throw GridError("periodic axis too short for the ghost layer");
    }
    axes_[a] = ax;
  }
  dims_ = static_cast<int>(axes.size());
  ghost_ = ghost_width;
  for (int a = dims_; a < kMaxDims; ++a) axes_[a] = Axis{0.0, 1.0, 1, false};
}

Grid Grid::line(double x_min, double x_max, int n_cells, int ghost_width,
                bool periodic) {
  return Grid({Axis{x_min, x_max, n_cells, periodic}}, ghost_width);
}

std::size_t Grid::node_count() const {
  std::size_t n = 1;
  for (int a = 0; a < dims_; ++a) n *= static_cast<std::size_t>(n_nodes(a));
  return n;
}

std::size_t Grid::storage_size() const {
  std::size_t n = 1;
  for (int a = 0; a < kMaxDims; ++a) n *= static_cast<std::size_t>(extent(a));
  return n;
}

Point Grid::coordinates(int i, int j, int k) const {
  const std::array<int, 3> idx{i, j, k};
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dims_; ++a) p[a] = axes_[a].coordinate(idx[a]);
  return p;
}

int required_ghost_width(int max_derivative_order, int accuracy_order) {
  return (max_derivative_order + accuracy_order) / 2;
}

SphericalGrid2D::SphericalGrid2D(double rho_max, int n_rho, int n_theta,
                                 int ghost_width)
    : grid_({Axis{1.0, rho_max, n_rho, false},
             Axis{0.0, std::numbers::pi, n_theta, false}},
            ghost_width) {
  if (!(rho_max > 1.0)) throw GridError("rho_max must exceed 1");
}

double SphericalGrid2D::theta(int j) const {
  if (j == 0) return 0.0;
  if (j == n_theta()) return std::numbers::pi;
  return grid_.axis(1).coordinate(j);
}

}  // namespace taylorfd
