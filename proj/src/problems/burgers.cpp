#include "taylorfd/problems/burgers.hpp"

#include "taylorfd/field/derivative.hpp"

namespace taylorfd {

Field burgers_rhs(const Field& u, double nu, int accuracy) {
  const Field d1 = apply_derivative(u, 1, 0, accuracy);
  const Field d2 = apply_derivative(u, 2, 0, accuracy);
  Field out(u.grid(), Quantity::Derivative);
  out.for_each_node([&](int i, int j, int k) {
    out(i, j, k) = nu * d2(i, j, k) - u(i, j, k) * d1(i, j, k);
  });
  return out;
}

Field burgers_rhs_conservative(const Field& u, double nu, int accuracy) {
  Field half_square = hadamard_with_ghosts(u, u);
  for (double& v : half_square.storage()) v *= 0.5;
  const Field flux = apply_derivative(half_square, 1, 0, accuracy);
  Field out = apply_derivative(u, 2, 0, accuracy);
  out.for_each_node([&](int i, int j, int k) { out(i, j, k) = nu * out(i, j, k) - flux(i, j, k); });
  out.set_quantity(Quantity::Derivative);
  return out;
}

Field burgers_level2(const Field& u, const Field& f, double nu, int accuracy) {
  const Field d2f = apply_derivative(f, 2, 0, accuracy);
  const Field flux = apply_derivative(hadamard_with_ghosts(f, u), 1, 0, accuracy);
  Field out(u.grid(), Quantity::Derivative);
  out.for_each_node([&](int i, int j, int k) {
    out(i, j, k) = nu * d2f(i, j, k) - flux(i, j, k);
  });
  return out;
}

Field burgers_level2_expanded(const Field& u, double nu, int accuracy) {
  const Field u1 = apply_derivative(u, 1, 0, accuracy);
  const Field u2 = apply_derivative(u, 2, 0, accuracy);
  const Field u3 = apply_derivative(u, 3, 0, accuracy);
  const Field u4 = apply_derivative(u, 4, 0, accuracy);
  Field out(u.grid(), Quantity::Derivative);
  out.for_each_node([&](int i, int j, int k) {
    const double v = u(i, j, k), a = u1(i, j, k), b = u2(i, j, k);
    out(i, j, k) = nu * nu * u4(i, j, k) - 4.0 * nu * a * b - 2.0 * nu * v * u3(i, j, k) +
                   2.0 * v * a * a + v * v * b;
  });
  return out;
}

std::vector<Field> burgers_levels_leibniz(const Field& u, double nu, int q, const BoundarySet& bc,
                                          double t, int accuracy) {
  std::vector<Field> g;
  g.reserve(q + 1);
  g.push_back(fill_ghosts(u, bc, t, 0));
  for (int k = 0; k < q; ++k) {
    // 1/2 sum_j C(k,j) G_j G_{k-j} over the whole storage so the ghosts carry
    // over; k = 0 gives U^2/2, k = 1 gives G_1 G_0.
    Field half_square = hadamard_with_ghosts(g[0], g[k]);
    auto hs = half_square.storage();
    double binom = 1.0;
    for (int j = 1; j <= k; ++j) {
      binom = binom * (k - j + 1) / j;
      const auto a = g[j].storage();
      const auto b = g[k - j].storage();
      for (std::size_t n = 0; n < hs.size(); ++n) hs[n] = hs[n] + binom * (a[n] * b[n]);
    }
    for (double& v : hs) v *= 0.5;
    Field next = apply_derivative(g[k], 2, 0, accuracy);
    const Field flux = apply_derivative(half_square, 1, 0, accuracy);
    next.for_each_node([&](int i, int j, int kk) {
      next(i, j, kk) = nu * next(i, j, kk) - flux(i, j, kk);
    });
    g.push_back(fill_ghosts(std::move(next), bc, t, k + 1));
  }
  g.erase(g.begin());
  return g;
}

std::vector<Field> BurgersProblem::levels(const Field& u, double t, int q) const {
  return burgers_levels_leibniz(u, nu, q, bc, t, accuracy);
}

Field burgers_euler_step(const Field& u, double nu, double dt, const BoundarySet& bc, double t,
                         int accuracy) {
  const Field filled = fill_ghosts(u, bc, t, 0);
  const Field f = burgers_rhs_conservative(filled, nu, accuracy);
  Field out(u.grid(), u.quantity());
  out.for_each_node([&](int i, int j, int k) { out(i, j, k) = filled(i, j, k) + dt * f(i, j, k); });
  enforce_dirichlet(out, bc, t + dt);
  return out;
}

}  // namespace taylorfd
