#include "taylorfd/field/boundary.hpp"

#include <string>
#include <vector>

#include "taylorfd/field/stencil.hpp"

namespace taylorfd {

BoundaryCondition BoundaryCondition::dirichlet(BoundaryValue v) {
  return {BoundaryKind::Dirichlet, std::move(v), 4};
}

BoundaryCondition BoundaryCondition::dirichlet(double c) {
  return dirichlet([c](const Point&, double, int level) { return level == 0 ? c : 0.0; });
}

BoundaryCondition BoundaryCondition::neumann(BoundaryValue g) {
  return {BoundaryKind::Neumann, std::move(g), 4};
}

BoundaryCondition BoundaryCondition::neumann(double g) {
  return neumann([g](const Point&, double, int level) { return level == 0 ? g : 0.0; });
}

BoundaryCondition BoundaryCondition::symmetry() { return {BoundaryKind::Symmetry, {}, 4}; }

BoundaryCondition BoundaryCondition::extrapolation(int degree) {
  if (degree < 0) throw BoundaryError("extrapolation degree must be non-negative");
  return {BoundaryKind::Extrapolation, {}, degree};
}

BoundaryCondition BoundaryCondition::one_sided() { return {BoundaryKind::OneSided, {}, 4}; }

BoundaryCondition BoundaryCondition::periodic() { return {BoundaryKind::Periodic, {}, 4}; }

BoundarySet& BoundarySet::set(int axis, Face face, BoundaryCondition bc) {
  if (axis < 0 || axis >= Grid::kMaxDims) throw BoundaryError("axis out of range");
  if ((bc.kind == BoundaryKind::Dirichlet || bc.kind == BoundaryKind::Neumann) && !bc.value) {
    throw BoundaryError("boundary condition needs a value function");
  }
  faces_[2 * axis + static_cast<int>(face)] = std::move(bc);
  return *this;
}

BoundarySet& BoundarySet::set_axis(int axis, const BoundaryCondition& bc) {
  set(axis, Face::Lower, bc);
  return set(axis, Face::Upper, bc);
}

namespace {

// Physical transverse index pairs for a given axis, as (i,j,k) with the axis
// slot set to zero.
template <class Fn>
void for_each_line(const Grid& g, int axis, Fn&& fn) {
  const int n0 = axis == 0 ? 1 : g.n_nodes(0);
  const int n1 = axis == 1 ? 1 : g.n_nodes(1);
  const int n2 = axis == 2 ? 1 : g.n_nodes(2);
  for (int k = 0; k < n2; ++k)
    for (int j = 0; j < n1; ++j)
      for (int i = 0; i < n0; ++i) fn(i, j, k);
}

struct Line {
  Field& f;
  std::size_t base;
  std::ptrdiff_t stride;
  double& operator[](int m) { return f.storage()[base + m * stride]; }
};

// Index m along `axis` measured inward from the face: 0 is the boundary node,
// negative values are ghosts.
int along(int m, Face face, int n) { return face == Face::Lower ? m : n - 1 - m; }

Point boundary_point(const Grid& g, int axis, Face face, int i, int j, int k) {
  int idx[3] = {i, j, k};
  idx[axis] = face == Face::Lower ? 0 : g.n_nodes(axis) - 1;
  return g.coordinates(idx[0], idx[1], idx[2]);
}

void extrapolate(Line& line, Face face, int n, int gw, int degree) {
  const int npts = std::min(degree + 1, n);
  std::vector<long double> nodes(npts);
  for (int m = 0; m < npts; ++m) nodes[m] = m;
  for (int j = 1; j <= gw; ++j) {
    const auto w = fornberg_weights(0, nodes, static_cast<long double>(-j));
    double acc = 0.0;
    for (int m = 0; m < npts; ++m) acc += static_cast<double>(w[m]) * line[along(m, face, n)];
    line[along(-j, face, n)] = acc;
  }
}

void fill_face(Field& f, int axis, Face face, const BoundaryCondition& bc, double t, int level) {
  const Grid& g = f.grid();
  const int n = g.n_nodes(axis);
  const int gw = g.ghost_width();
  const double h = g.spacing(axis);
  for_each_line(g, axis, [&](int i, int j, int k) {
    Line line{f, f.offset(i, j, k), f.stride(axis)};
    switch (bc.kind) {
      case BoundaryKind::Dirichlet: {
        line[along(0, face, n)] = bc.value(boundary_point(g, axis, face, i, j, k), t, level);
        extrapolate(line, face, n, gw, bc.degree);
        break;
      }
      case BoundaryKind::Neumann: {
        const double gv = bc.value(boundary_point(g, axis, face, i, j, k), t, level);
        for (int m = 1; m <= gw; ++m) {
          line[along(-m, face, n)] = line[along(m, face, n)] + 2.0 * m * h * gv;
        }
        break;
      }
      case BoundaryKind::Symmetry:
        for (int m = 1; m <= gw; ++m) line[along(-m, face, n)] = line[along(m, face, n)];
        break;
      case BoundaryKind::Extrapolation:
      case BoundaryKind::OneSided:
        extrapolate(line, face, n, gw, bc.degree);
        break;
      case BoundaryKind::Periodic:
        break;
    }
  });
  f.set_ghost_state(axis, face,
                    bc.kind == BoundaryKind::Dirichlet || bc.kind == BoundaryKind::OneSided
                        ? GhostState::OneSided
                        : GhostState::Filled);
}

void wrap(Field& f, int axis) {
  const Grid& g = f.grid();
  const int n = g.n_nodes(axis);
  const int gw = g.ghost_width();
  for_each_line(g, axis, [&](int i, int j, int k) {
    Line line{f, f.offset(i, j, k), f.stride(axis)};
    for (int m = 1; m <= gw; ++m) {
      line[-m] = line[n - m];
      line[n - 1 + m] = line[m - 1];
    }
  });
  f.set_ghost_state(axis, Face::Lower, GhostState::Filled);
  f.set_ghost_state(axis, Face::Upper, GhostState::Filled);
}

const char* face_name(Face face) { return face == Face::Lower ? "lower" : "upper"; }

}  // namespace

void fill_ghosts_in_place(Field& f, const BoundarySet& bc, double t, int level) {
  const Grid& g = f.grid();
  for (int a = 0; a < g.dims(); ++a) {
    if (g.axis(a).periodic) {
      for (Face face : {Face::Lower, Face::Upper}) {
        const auto& c = bc.at(a, face);
        if (c && c->kind != BoundaryKind::Periodic) {
          throw BoundaryError("axis " + std::to_string(a) + " is periodic; " + face_name(face) +
                              " face carries a non-periodic condition");
        }
      }
      wrap(f, a);
      continue;
    }
    for (Face face : {Face::Lower, Face::Upper}) {
      const auto& c = bc.at(a, face);
      if (!c) {
        throw BoundaryError("no boundary condition on the " + std::string(face_name(face)) +
                            " face of axis " + std::to_string(a));
      }
      if (c->kind == BoundaryKind::Periodic) {
        throw BoundaryError("periodic condition on non-periodic axis " + std::to_string(a));
      }
      fill_face(f, a, face, *c, t, level);
    }
  }
}

Field fill_ghosts(Field f, const BoundarySet& bc, double t, int level) {
  fill_ghosts_in_place(f, bc, t, level);
  return f;
}

void enforce_dirichlet(Field& f, const BoundarySet& bc, double t, int level) {
  const Grid& g = f.grid();
  for (int a = 0; a < g.dims(); ++a) {
    if (g.axis(a).periodic) continue;
    const int n = g.n_nodes(a);
    for (Face face : {Face::Lower, Face::Upper}) {
      const auto& c = bc.at(a, face);
      if (!c || c->kind != BoundaryKind::Dirichlet) continue;
      for_each_line(g, a, [&](int i, int j, int k) {
        Line line{f, f.offset(i, j, k), f.stride(a)};
        line[along(0, face, n)] = c->value(boundary_point(g, a, face, i, j, k), t, level);
      });
    }
  }
  f.invalidate_ghosts();
}

}  // namespace taylorfd
