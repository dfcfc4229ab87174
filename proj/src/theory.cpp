#include "superclose/theory.hpp"

#include <algorithm>
#include <cmath>

#include "format.hpp"

namespace superclose {

bool q_restriction_satisfied(int dimension, int nu, double q) {
  const int critical = 4 - 2 * nu;
  if (dimension < critical) return true;
  if (dimension == critical) return std::isfinite(q);
  return q <= 2.0 * dimension / (dimension - 4.0 + 2.0 * nu);
}

std::vector<std::string> RateInputs::violations() const {
  std::vector<std::string> v;
  if (!(gamma >= 0.0)) v.push_back("gamma must be >= 0");
  if (!(eta >= 2.0)) v.push_back("eta must be in [2, inf]");
  if (s != 0 && s != 1) v.push_back("s must be 0 or 1");
  if (mu < 0 || mu > s) v.push_back("mu must be in {0, ..., s}");
  if (nu < 0 || nu > s) v.push_back("nu must be in {0, ..., s}");
  if (r <= s) v.push_back("r must be > s");
  if (!delta.is_infinite() && !(delta.value() >= 0.0)) v.push_back("delta must be >= 0");
  if (q) {
    if (!(*q >= 1.0 && *q <= eta)) v.push_back("q must be in [1, eta]");
    if (dimension < 1) v.push_back("dimension must be >= 1");
    else if (!q_restriction_satisfied(dimension, nu, *q)) {
      v.push_back("q = " + fmt_double(*q) + " violates the embedding restriction for d = " +
                  std::to_string(dimension) + ", nu = " + std::to_string(nu));
    }
  }
  return v;
}

void RateInputs::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid rate inputs: ";
  for (std::size_t i = 0; i < v.size(); ++i) msg += (i ? "; " : "") + v[i];
  fail(ErrorCode::invalid_argument, msg);
}

namespace {

double mesh_term(const RateInputs& in) {
  // gamma may be huge; eta = 2 must give exactly 0.
  const double factor = 0.5 - (std::isinf(in.eta) ? 0.0 : 1.0 / in.eta);
  return factor == 0.0 ? 0.0 : in.gamma * factor;
}

}  // namespace

double predicted_sigma(const RateInputs& in) {
  in.validate();
  const double m = mesh_term(in);
  if (in.delta.is_infinite()) return m;
  return std::min(m, (in.delta.value() + 2.0 * in.s - in.mu - in.nu) / 2.0);
}

double predicted_sigma_prime(const RateInputs& in) {
  in.validate();
  require(in.s == 1, "sigma' is only defined for s = 1");
  const double m = mesh_term(in);
  if (in.delta.is_infinite()) return m;
  const double d = in.delta.value();
  return std::min({m, (d + 2.0 - in.mu - in.nu) / 2.0, d - in.mu});
}

double predicted_order(const RateInputs& in, int norm_order) {
  require(norm_order == 0 || norm_order == 1, "norm order must be 0 or 1");
  if (norm_order == in.s) return in.r - in.s + predicted_sigma(in);
  require(norm_order == 0 && in.s == 1, "no predictor for an H1 norm under an L2-type form");
  return in.r + predicted_sigma_prime(in);
}

std::vector<double> observed_orders(std::span<const double> hs, std::span<const double> values) {
  require(hs.size() == values.size(), "observed_orders: length mismatch");
  require(hs.size() >= 2, "observed_orders: need at least two entries");
  for (double v : values) require(v > 0.0, "observed_orders: values must be positive");
  for (std::size_t i = 1; i < hs.size(); ++i) {
    require(hs[i] < hs[i - 1] && hs[i] > 0.0, "observed_orders: hs must be strictly decreasing");
  }
  std::vector<double> out(hs.size() - 1);
  for (std::size_t i = 1; i < hs.size(); ++i) {
    out[i - 1] = std::log(values[i - 1] / values[i]) / std::log(hs[i - 1] / hs[i]);
  }
  return out;
}

}  // namespace superclose
