#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superclose/core.hpp"

namespace superclose {

/// Inputs of the superconvergence-order predictors.
struct RateInputs {
  double gamma = 0.0;       ///< differing region has measure O(h^gamma)
  double eta = kInfinity;   ///< integrability of u, in [2, inf]
  Delta delta = Delta::infinite();
  int mu = 0;
  int nu = 0;
  int s = 0;  ///< Sobolev order of the bilinear form, 0 or 1
  int r = 2;  ///< polynomial degree + 1
  /// Whether the bound carries a log(1/h) factor. Metadata only.
  bool log_factor = false;
  /// Optional integrability q of the second argument in the form-perturbation
  /// bound, and the spatial dimension it is checked against.
  std::optional<double> q;
  int dimension = 1;

  /// Human-readable list of violated constraints; empty when valid.
  std::vector<std::string> violations() const;
  void validate() const;
};

/// Embedding restriction on q: q < inf if d = 4 - 2 nu,
/// q <= 2d / (d - 4 + 2 nu) if d > 4 - 2 nu, unrestricted otherwise.
bool q_restriction_satisfied(int dimension, int nu, double q);

/// sigma = min{gamma (1/2 - 1/eta), (delta + 2s - mu - nu) / 2}.
double predicted_sigma(const RateInputs& in);

/// sigma' = min{gamma (1/2 - 1/eta), (delta + 2 - mu - nu) / 2, delta - mu}.
/// Requires s = 1.
double predicted_sigma_prime(const RateInputs& in);

/// Predicted order of ‖r_h⁺u - r_h u‖_{norm_order,2}: r - s + sigma for the
/// form's own norm, r + sigma' for the L2 norm under an s = 1 form.
double predicted_order(const RateInputs& in, int norm_order);

/// order_i = log(v_{i-1}/v_i) / log(h_{i-1}/h_i), i = 1..n-1.
std::vector<double> observed_orders(std::span<const double> hs, std::span<const double> values);

}  // namespace superclose
