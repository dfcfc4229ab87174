#include "superclose/quadrature.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

namespace superclose {

QuadratureRule gauss_legendre(int n) {
  require(n >= 1 && n <= 64, "gauss_legendre: point count must be in [1, 64]");
  QuadratureRule rule;
  rule.dimension = 1;
  rule.exactness_degree = 2 * n - 1;
  rule.points.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from Chebyshev-like initial guesses, then map
  // [-1,1] -> [0,1].
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0;
    double p1 = z;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    dp = n * (z * p1 - p0) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.points[n - 1 - i] = Vec2{0.5 * (z + 1.0), 0.0};
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

namespace {

QuadratureRule build_rule(int dimension, int degree) {
  if (dimension == 1) {
    const int n = std::max(1, (degree + 2) / 2);
    QuadratureRule r = gauss_legendre(n);
    r.exactness_degree = degree;
    return r;
  }
  // x = xi (1 - eta), y = eta, Jacobian (1 - eta). A polynomial of total
  // degree p becomes degree p in xi and p+1 in eta.
  const int n = std::max(1, (degree + 3) / 2);
  const QuadratureRule g = gauss_legendre(n);
  QuadratureRule r;
  r.dimension = 2;
  r.exactness_degree = degree;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double eta = g.points[j].x;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double xi = g.points[i].x;
      r.points.push_back(Vec2{xi * (1.0 - eta), eta});
      r.weights.push_back(g.weights[i] * g.weights[j] * (1.0 - eta));
    }
  }
  return r;
}

}  // namespace

const QuadratureRule& quadrature_rule(int dimension, int exactness_degree) {
  require(dimension == 1 || dimension == 2, "quadrature_rule: dimension must be 1 or 2");
  const int max_degree = dimension == 1 ? 20 : 14;
  require(exactness_degree >= 0 && exactness_degree <= max_degree,
          "quadrature_rule: unsupported exactness degree " + std::to_string(exactness_degree) +
              " for dimension " + std::to_string(dimension));
  static std::mutex mutex;
  static std::map<std::pair<int, int>, QuadratureRule> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace({dimension, exactness_degree});
  if (inserted) it->second = build_rule(dimension, exactness_degree);
  return it->second;
}

}  // namespace superclose
