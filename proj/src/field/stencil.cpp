#include "taylorfd/field/stencil.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>

namespace taylorfd {

std::vector<long double> fornberg_weights(int k, std::span<const long double> nodes,
                                          long double x0) {
  const int n = static_cast<int>(nodes.size());
  if (k < 0) throw StencilError("derivative order must be non-negative");
  if (n <= k) throw StencilError("need more than k nodes for a k-th derivative");

  // c[i][m]: weight of node i for derivative m.
  std::vector<std::vector<long double>> c(n, std::vector<long double>(k + 1, 0.0L));
  long double c1 = 1.0L;
  long double c4 = nodes[0] - x0;
  c[0][0] = 1.0L;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, k);
    long double c2 = 1.0L;
    const long double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const long double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int m = mn; m >= 1; --m) {
          c[i][m] = c1 * (m * c[i - 1][m - 1] - c5 * c[i - 1][m]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int m = mn; m >= 1; --m) {
        c[j][m] = (c4 * c[j][m] - m * c[j][m - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<long double> w(n);
  for (int i = 0; i < n; ++i) w[i] = c[i][k];
  return w;
}

int central_half_width(int k, int p) { return (k + 1) / 2 - 1 + p / 2; }

namespace {

void validate(int k, int p) {
  if (k < 1) throw StencilError("derivative order must be >= 1");
  if (p < 1) throw StencilError("accuracy order must be >= 1");
  if (k + p > kMaxStencilPoints - 1) {
    throw StencilError("derivative order " + std::to_string(k) + " at accuracy " +
                       std::to_string(p) + " exceeds the stencil width cap");
  }
}

StencilSpec build(int k, int p, int first, int n_points) {
  StencilSpec s;
  s.derivative_order = k;
  s.accuracy_order = p;
  std::vector<long double> nodes(n_points);
  for (int i = 0; i < n_points; ++i) {
    s.offsets.push_back(first + i);
    nodes[i] = static_cast<long double>(first + i);
  }
  const auto w = fornberg_weights(k, nodes, 0.0L);
  s.weights.assign(w.begin(), w.end());
  s.exact_weights = w;
  return s;
}

}  // namespace

StencilSpec make_stencil(int k, int p) {
  validate(k, p);
  if (p % 2 != 0) throw StencilError("central stencils need an even accuracy order");
  const int r = central_half_width(k, p);
  return build(k, p, -r, 2 * r + 1);
}

StencilSpec make_shifted_stencil(int k, int p, int first_offset) {
  validate(k, p);
  return build(k, p, first_offset, k + p);
}

namespace {

struct Cache {
  std::mutex mutex;
  std::map<std::tuple<int, int, int, bool>, std::unique_ptr<StencilSpec>> entries;
};

Cache& cache() {
  static Cache c;
  return c;
}

const StencilSpec& lookup(int k, int p, int first, bool central) {
  Cache& c = cache();
  std::lock_guard lock(c.mutex);
  auto key = std::make_tuple(k, p, first, central);
  auto it = c.entries.find(key);
  if (it == c.entries.end()) {
    auto spec = std::make_unique<StencilSpec>(central ? make_stencil(k, p)
                                                      : make_shifted_stencil(k, p, first));
    it = c.entries.emplace(key, std::move(spec)).first;
  }
  return *it->second;
}

}  // namespace

const StencilSpec& central_stencil(int k, int p) { return lookup(k, p, 0, true); }

const StencilSpec& shifted_stencil(int k, int p, int first_offset) {
  return lookup(k, p, first_offset, false);
}

}  // namespace taylorfd
