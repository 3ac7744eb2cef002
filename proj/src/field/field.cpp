#include "taylorfd/field/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taylorfd {

namespace {

void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) {
    throw std::invalid_argument("fields live on different grids");
  }
}

template <class Op>
Field combine(const Field& a, const Field& b, Op op) {
  require_same_grid(a, b);
  Field out(a.grid(), a.quantity());
  a.for_each_node([&](int i, int j, int k) { out(i, j, k) = op(a(i, j, k), b(i, j, k)); });
  return out;
}

}  // namespace

Field::Field(Grid grid, Quantity quantity, double value)
    : grid_(std::move(grid)), quantity_(quantity), data_(grid_.storage_size(), value) {
  strides_ = {1, grid_.extent(0), static_cast<std::ptrdiff_t>(grid_.extent(0)) * grid_.extent(1)};
  ghosts_.fill(GhostState::Unfilled);
}

Field Field::sample(const Grid& grid, const std::function<double(const Point&)>& fn,
                    Quantity quantity) {
  Field f(grid, quantity);
  f.for_each_node([&](int i, int j, int k) { f(i, j, k) = fn(grid.coordinates(i, j, k)); });
  return f;
}

void Field::invalidate_ghosts() { ghosts_.fill(GhostState::Unfilled); }

void Field::fill(double value) {
  std::fill(data_.begin(), data_.end(), value);
  invalidate_ghosts();
}

Field& Field::add_scaled(const Field& x, double a) {
  require_same_grid(*this, x);
  for_each_node([&](int i, int j, int k) {
    const std::size_t o = offset(i, j, k);
    data_[o] = data_[o] + a * x.data_[o];
  });
  invalidate_ghosts();
  return *this;
}

Field& Field::scale(double a) {
  for_each_node([&](int i, int j, int k) { data_[offset(i, j, k)] *= a; });
  invalidate_ghosts();
  return *this;
}

double Field::max_abs() const {
  double m = 0.0;
  for_each_node([&](int i, int j, int k) { m = std::max(m, std::abs(data_[offset(i, j, k)])); });
  return m;
}

bool Field::all_finite() const {
  bool ok = true;
  for_each_node([&](int i, int j, int k) { ok = ok && std::isfinite(data_[offset(i, j, k)]); });
  return ok;
}

double Field::sum() const {
  double s = 0.0;
  for_each_node([&](int i, int j, int k) { s += data_[offset(i, j, k)]; });
  return s;
}

double max_abs_diff(const Field& a, const Field& b) {
  require_same_grid(a, b);
  double m = 0.0;
  a.for_each_node([&](int i, int j, int k) {
    m = std::max(m, std::abs(a(i, j, k) - b(i, j, k)));
  });
  return m;
}

Field operator+(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

Field operator-(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

Field operator*(double s, const Field& a) {
  Field out(a.grid(), a.quantity());
  a.for_each_node([&](int i, int j, int k) { out(i, j, k) = s * a(i, j, k); });
  return out;
}

Field hadamard(const Field& a, const Field& b) {
  return combine(a, b, [](double x, double y) { return x * y; });
}

Field hadamard_with_ghosts(const Field& a, const Field& b) {
  require_same_grid(a, b);
  Field out(a.grid(), a.quantity());
  auto o = out.storage();
  const auto x = a.storage();
  const auto y = b.storage();
  for (std::size_t n = 0; n < o.size(); ++n) o[n] = x[n] * y[n];
  for (int axis = 0; axis < a.grid().dims(); ++axis) {
    for (Face face : {Face::Lower, Face::Upper}) {
      const GhostState sa = a.ghost_state(axis, face);
      const GhostState sb = b.ghost_state(axis, face);
      GhostState s = GhostState::Filled;
      if (sa == GhostState::Unfilled || sb == GhostState::Unfilled) {
        s = GhostState::Unfilled;
      } else if (sa == GhostState::OneSided || sb == GhostState::OneSided) {
        s = GhostState::OneSided;
      }
      out.set_ghost_state(axis, face, s);
    }
  }
  return out;
}

}  // namespace taylorfd
