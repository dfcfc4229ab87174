#pragma once

#include <vector>

#include "superclose/core.hpp"

namespace superclose {

/// Quadrature on the reference interval [0,1] (points use `x` only) or the
/// reference triangle {(0,0), (1,0), (0,1)}.
struct QuadratureRule {
  int dimension = 1;
  int exactness_degree = 0;
  std::vector<Vec2> points;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
};

/// n-point Gauss–Legendre rule on [0,1].
QuadratureRule gauss_legendre(int n);

/// Rule exact for polynomials of total degree <= exactness_degree.
/// 1-D: Gauss–Legendre, exactness <= 20. 2-D: collapsed (Duffy) tensor
/// Gauss–Legendre, exactness <= 14. Returns a cached rule.
const QuadratureRule& quadrature_rule(int dimension, int exactness_degree);

}  // namespace superclose
