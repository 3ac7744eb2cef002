#include "taylorfd/poisson/poisson.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "taylorfd/field/derivative.hpp"

namespace taylorfd {

namespace {

using Index = std::array<int, 3>;

struct Layout {
  const Grid* grid;
  std::array<int, 3> n{1, 1, 1};

  explicit Layout(const Grid& g) : grid(&g) {
    for (int a = 0; a < g.dims(); ++a) n[a] = g.n_nodes(a);
  }
  int count() const { return n[0] * n[1] * n[2]; }
  int flat(const Index& x) const { return x[0] + n[0] * (x[1] + n[1] * x[2]); }
  Index unflat(int f) const { return {f % n[0], (f / n[0]) % n[1], f / (n[0] * n[1])}; }
};

bool is_mirror(BoundaryKind k) { return k == BoundaryKind::Neumann || k == BoundaryKind::Symmetry; }

const BoundaryCondition* face_bc(const BoundarySet& bc, int axis, Face face) {
  const auto& c = bc.at(axis, face);
  return c ? &*c : nullptr;
}

// Dirichlet condition owning node x, if any.
const BoundaryCondition* dirichlet_at(const Grid& g, const BoundarySet& bc, const Index& x) {
  for (int a = 0; a < g.dims(); ++a) {
    if (g.axis(a).periodic) continue;
    for (Face face : {Face::Lower, Face::Upper}) {
      const bool on = face == Face::Lower ? x[a] == 0 : x[a] == g.n_nodes(a) - 1;
      const auto* c = face_bc(bc, a, face);
      if (on && c && c->kind == BoundaryKind::Dirichlet) return c;
    }
  }
  return nullptr;
}

void validate(const PoissonProblem& pr) {
  const Grid& g = pr.rhs.grid();
  if (g.dims() == 0) throw PoissonError("rhs has no grid");
  if (g.ghost_width() < 1) throw PoissonError("grid needs at least one ghost layer");
  if (!(pr.tolerance > 0.0)) throw PoissonError("tolerance must be > 0");
  if (pr.max_iterations < 1) throw PoissonError("max_iterations must be >= 1");
  if (!(pr.omega > 0.0 && pr.omega < 2.0)) throw PoissonError("omega must lie in (0, 2)");
  if (!pr.rhs.all_finite()) throw PoissonError("rhs has non-finite values");
  for (int a = 0; a < g.dims(); ++a) {
    const int min_nodes = pr.stencil == LaplacianStencil::Wide ? 5 : 3;
    if (g.n_nodes(a) < min_nodes) throw PoissonError("too few nodes on axis " + std::to_string(a));
    if (g.axis(a).periodic) continue;
    if (pr.stencil == LaplacianStencil::Wide) {
      throw PoissonError("the wide Laplacian is only available on periodic axes");
    }
    for (Face face : {Face::Lower, Face::Upper}) {
      const auto* c = face_bc(pr.bc, a, face);
      if (!c) throw PoissonError("no pressure condition on a face of axis " + std::to_string(a));
      if (c->kind != BoundaryKind::Dirichlet && !is_mirror(c->kind)) {
        throw PoissonError("pressure faces take Dirichlet, Neumann, Symmetry or Periodic");
      }
    }
  }
}

struct System {
  Layout layout;
  std::vector<int> node;          // unknown -> flat node
  std::vector<int> unknown;       // flat node -> unknown, -1 for Dirichlet
  std::vector<double> known;      // flat node -> Dirichlet value
  std::vector<int> row_ptr{0};
  std::vector<int> col;
  std::vector<double> val;
  std::vector<double> diag;
  std::vector<double> b;
  std::vector<double> weight;     // W with W A symmetric
  std::vector<int> cls;           // null-space class of each unknown
  int n_classes = 1;
  bool singular = true;

  explicit System(const Grid& g) : layout(g) {}
  int size() const { return static_cast<int>(node.size()); }
};

System assemble(const PoissonProblem& pr) {
  const Grid& g = pr.rhs.grid();
  System s(g);
  const Layout& L = s.layout;
  const int total = L.count();
  s.unknown.assign(total, -1);
  s.known.assign(total, 0.0);
  for (int f = 0; f < total; ++f) {
    const Index x = L.unflat(f);
    if (const auto* c = dirichlet_at(g, pr.bc, x)) {
      s.known[f] = c->value(g.coordinates(x[0], x[1], x[2]), 0.0, 0);
      s.singular = false;
    } else {
      s.unknown[f] = static_cast<int>(s.node.size());
      s.node.push_back(f);
    }
  }

  const bool wide = pr.stencil == LaplacianStencil::Wide;
  const int reach = wide ? 2 : 1;
  std::array<int, 3> parity_bit{0, 0, 0};
  if (wide) {
    int bit = 1;
    for (int a = 0; a < g.dims(); ++a) {
      if (g.n_nodes(a) % 2 == 0) {
        parity_bit[a] = bit;
        bit *= 2;
      }
    }
    s.n_classes = bit;
  }

  std::vector<std::pair<int, double>> row;
  for (int u = 0; u < s.size(); ++u) {
    const int f = s.node[u];
    const Index x = L.unflat(f);
    double d = 0.0, rhs = pr.rhs(x[0], x[1], x[2]), w = 1.0;
    int cls = 0;
    row.clear();
    auto couple = [&](int target, double c) {
      if (target == f) {
        d += c;
      } else if (s.unknown[target] < 0) {
        rhs -= c * s.known[target];
      } else {
        row.emplace_back(s.unknown[target], c);
      }
    };
    for (int a = 0; a < g.dims(); ++a) {
      const double h = g.spacing(a);
      const double c = wide ? 1.0 / (4.0 * h * h) : 1.0 / (h * h);
      const int n = g.n_nodes(a);
      d -= 2.0 * c;
      cls += (x[a] % 2) * parity_bit[a];
      for (int dir : {-1, 1}) {
        Index y = x;
        y[a] = x[a] + dir * reach;
        if (g.axis(a).periodic) {
          y[a] = ((y[a] % n) + n) % n;
          couple(L.flat(y), c);
          continue;
        }
        if (y[a] >= 0 && y[a] < n) {
          couple(L.flat(y), c);
          continue;
        }
        // Ghost node: mirror value plus 2 h g, g the outward derivative.
        const auto* bcf = face_bc(pr.bc, a, dir < 0 ? Face::Lower : Face::Upper);
        y[a] = x[a] - dir;
        couple(L.flat(y), c);
        if (bcf->kind == BoundaryKind::Neumann) {
          const double gn = bcf->value(g.coordinates(x[0], x[1], x[2]), 0.0, 0);
          rhs -= c * 2.0 * h * gn;
        }
        w *= 0.5;
      }
    }
    std::sort(row.begin(), row.end());
    for (std::size_t m = 0; m < row.size(); ++m) {
      if (m > 0 && row[m].first == row[m - 1].first) {
        s.val.back() += row[m].second;
        continue;
      }
      s.col.push_back(row[m].first);
      s.val.push_back(row[m].second);
    }
    s.row_ptr.push_back(static_cast<int>(s.col.size()));
    s.diag.push_back(d);
    s.b.push_back(rhs);
    s.weight.push_back(w);
    s.cls.push_back(cls);
  }
  return s;
}

// b - A p for every unknown.
void residual_vector(const System& s, const std::vector<double>& p, std::vector<double>& r) {
  r.resize(s.size());
  for (int u = 0; u < s.size(); ++u) {
    long double acc = static_cast<long double>(s.diag[u]) * p[u];
    for (int m = s.row_ptr[u]; m < s.row_ptr[u + 1]; ++m) acc += static_cast<long double>(s.val[m]) * p[s.col[m]];
    r[u] = static_cast<double>(s.b[u] - acc);
  }
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Subtracts from v, class by class, its mean under the given weights.
std::vector<double> remove_class_means(const System& s, std::vector<double>& v, bool weighted) {
  std::vector<double> num(s.n_classes, 0.0), den(s.n_classes, 0.0);
  for (int u = 0; u < s.size(); ++u) {
    const double w = weighted ? s.weight[u] : 1.0;
    num[s.cls[u]] += w * v[u];
    den[s.cls[u]] += w;
  }
  for (int c = 0; c < s.n_classes; ++c) num[c] = den[c] > 0.0 ? num[c] / den[c] : 0.0;
  for (int u = 0; u < s.size(); ++u) v[u] -= num[s.cls[u]];
  return num;
}

// Greedy coloring of the matrix graph; rows of one color do not couple.
std::vector<std::vector<int>> color_rows(const System& s) {
  std::vector<int> color(s.size(), -1);
  int n_colors = 0;
  std::vector<char> used;
  for (int u = 0; u < s.size(); ++u) {
    used.assign(n_colors + 1, 0);
    for (int m = s.row_ptr[u]; m < s.row_ptr[u + 1]; ++m) {
      const int c = color[s.col[m]];
      if (c >= 0) used[c] = 1;
    }
    int c = 0;
    while (used[c]) ++c;
    color[u] = c;
    n_colors = std::max(n_colors, c + 1);
  }
  std::vector<std::vector<int>> groups(n_colors);
  for (int u = 0; u < s.size(); ++u) groups[color[u]].push_back(u);
  return groups;
}

int solve_sor(const System& s, const PoissonProblem& pr, std::vector<double>& p, double& res) {
  const auto groups = color_rows(s);
  std::vector<double> r;
  constexpr int kCheckEvery = 10;
  for (int it = 1; it <= pr.max_iterations; ++it) {
    for (const auto& group : groups) {
      for (int u : group) {
        double acc = s.b[u];
        for (int m = s.row_ptr[u]; m < s.row_ptr[u + 1]; ++m) acc -= s.val[m] * p[s.col[m]];
        p[u] += pr.omega * (acc / s.diag[u] - p[u]);
      }
    }
    if (it % kCheckEvery == 0 || it == pr.max_iterations) {
      residual_vector(s, p, r);
      res = max_abs(r);
      if (!std::isfinite(res)) return it;
      if (res <= pr.tolerance) return it;
    }
  }
  return pr.max_iterations;
}

// Conjugate gradients on M = -W A (symmetric positive semi-definite).
int solve_cg(const System& s, const PoissonProblem& pr, std::vector<double>& p, double& res) {
  const int n = s.size();
  std::vector<double> r, z(n), d(n), q(n);
  auto apply_m = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (int u = 0; u < n; ++u) {
      long double acc = static_cast<long double>(s.diag[u]) * x[u];
      for (int m = s.row_ptr[u]; m < s.row_ptr[u + 1]; ++m) acc += static_cast<long double>(s.val[m]) * x[s.col[m]];
      y[u] = -s.weight[u] * static_cast<double>(acc);
    }
  };
  int it = 0;
  while (it < pr.max_iterations) {
    // (Re)start from the true residual: r_M = -W b - M p = -W (b - A p).
    residual_vector(s, p, r);
    res = max_abs(r);
    if (res <= pr.tolerance || !std::isfinite(res)) return it;
    for (int u = 0; u < n; ++u) r[u] *= -s.weight[u];
    if (s.singular) remove_class_means(s, r, false);
    d = r;
    double rr = 0.0;
    for (double v : r) rr += v * v;
    const int restart_at = std::min(pr.max_iterations, it + 2 * n + 50);
    for (; it < restart_at; ++it) {
      apply_m(d, q);
      double dq = 0.0;
      for (int u = 0; u < n; ++u) dq += d[u] * q[u];
      if (!(dq > 0.0)) break;
      const double alpha = rr / dq;
      for (int u = 0; u < n; ++u) {
        p[u] += alpha * d[u];
        r[u] -= alpha * q[u];
      }
      if (s.singular) remove_class_means(s, r, false);
      double rr_new = 0.0, rmax = 0.0;
      for (int u = 0; u < n; ++u) {
        rr_new += r[u] * r[u];
        rmax = std::max(rmax, std::abs(r[u]) / s.weight[u]);
      }
      if (rmax <= 0.5 * pr.tolerance) {
        ++it;
        break;
      }
      const double beta = rr_new / rr;
      rr = rr_new;
      for (int u = 0; u < n; ++u) d[u] = r[u] + beta * d[u];
    }
    residual_vector(s, p, r);
    res = max_abs(r);
    if (res <= pr.tolerance || it >= pr.max_iterations) return it;
  }
  return it;
}

}  // namespace

PoissonResult poisson_solve(const PoissonProblem& problem) {
  validate(problem);
  System s = assemble(problem);
  const Grid& g = problem.rhs.grid();

  PoissonResult out;
  out.singular = s.singular;
  out.rhs = problem.rhs;
  out.rhs.invalidate_ghosts();
  if (s.singular) {
    const auto shift = remove_class_means(s, s.b, true);
    for (int u = 0; u < s.size(); ++u) {
      const Index x = s.layout.unflat(s.node[u]);
      out.rhs(x[0], x[1], x[2]) -= shift[s.cls[u]];
    }
    out.compatibility_shift = max_abs(shift);
  }

  std::vector<double> p(s.size(), 0.0);
  double res = 0.0;
  out.iterations = problem.solver == PoissonSolver::SOR ? solve_sor(s, problem, p, res)
                                                        : solve_cg(s, problem, p, res);
  if (s.singular) remove_class_means(s, p, false);

  std::vector<double> r;
  residual_vector(s, p, r);
  out.residual = max_abs(r);
  out.converged = out.residual <= problem.tolerance;

  out.pressure = Field(g, Quantity::Pressure);
  for (int f = 0; f < s.layout.count(); ++f) {
    const Index x = s.layout.unflat(f);
    out.pressure(x[0], x[1], x[2]) = s.unknown[f] < 0 ? s.known[f] : p[s.unknown[f]];
  }
  out.recheck = field_residual(problem, out.pressure, out.rhs);
  return out;
}

double field_residual(const PoissonProblem& problem, const Field& pressure, const Field& rhs) {
  const Field f = fill_ghosts(pressure, problem.bc);
  const Grid& g = f.grid();
  Field lap(g);
  for (int a = 0; a < g.dims(); ++a) {
    if (problem.stencil == LaplacianStencil::Compact) {
      lap.add_scaled(apply_derivative(f, 2, a, 2), 1.0);
    } else {
      const Field d = fill_ghosts(apply_derivative(f, 1, a, 2), problem.bc);
      lap.add_scaled(apply_derivative(d, 1, a, 2), 1.0);
    }
  }
  double worst = 0.0;
  f.for_each_node([&](int i, int j, int k) {
    if (dirichlet_at(g, problem.bc, {i, j, k})) return;
    worst = std::max(worst, std::abs(lap(i, j, k) - rhs(i, j, k)));
  });
  return worst;
}

Field divergence(const std::vector<Field>& v, int accuracy) {
  if (v.empty()) throw std::invalid_argument("divergence needs at least one component");
  const int dims = v.front().grid().dims();
  if (static_cast<int>(v.size()) != dims) {
    throw std::invalid_argument("divergence needs one component per grid axis");
  }
  Field out = apply_derivative(v[0], 1, 0, accuracy);
  for (int a = 1; a < dims; ++a) out.add_scaled(apply_derivative(v[a], 1, a, accuracy), 1.0);
  return out;
}

}  // namespace taylorfd
