#include "superclose/function_spec.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace superclose::functions {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

FunctionSpec sine_product(int dimension) {
  require(dimension == 1 || dimension == 2, "sine_product: dimension must be 1 or 2");
  FunctionSpec u;
  u.dimension = dimension;
  if (dimension == 1) {
    u.name = "sin(pi x)";
    u.value = [](const Vec2& x) { return std::sin(pi * x.x); };
    u.gradient = [](const Vec2& x) { return Vec2{pi * std::cos(pi * x.x), 0.0}; };
    u.derivatives[2] = [](const Vec2& x) {
      return std::vector<double>{-pi * pi * std::sin(pi * x.x)};
    };
    u.derivatives[3] = [](const Vec2& x) {
      return std::vector<double>{-pi * pi * pi * std::cos(pi * x.x)};
    };
    u.seminorms[{0, 2.0}] = 1.0 / std::sqrt(2.0);
    u.seminorms[{0, kInfinity}] = 1.0;
    u.seminorms[{1, 2.0}] = pi / std::sqrt(2.0);
    u.seminorms[{1, kInfinity}] = pi;
    u.seminorms[{2, 2.0}] = pi * pi / std::sqrt(2.0);
    u.seminorms[{2, kInfinity}] = pi * pi;
    u.seminorms[{3, 2.0}] = pi * pi * pi / std::sqrt(2.0);
    u.seminorms[{3, kInfinity}] = pi * pi * pi;
  } else {
    u.name = "sin(pi x) sin(pi y)";
    u.value = [](const Vec2& x) { return std::sin(pi * x.x) * std::sin(pi * x.y); };
    u.gradient = [](const Vec2& x) {
      return Vec2{pi * std::cos(pi * x.x) * std::sin(pi * x.y),
                  pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
    };
    u.derivatives[2] = [](const Vec2& x) {
      const double sx = std::sin(pi * x.x);
      const double sy = std::sin(pi * x.y);
      const double cx = std::cos(pi * x.x);
      const double cy = std::cos(pi * x.y);
      return std::vector<double>{-pi * pi * sx * sy, pi * pi * cx * cy, -pi * pi * sx * sy};
    };
    u.seminorms[{0, 2.0}] = 0.5;
    u.seminorms[{0, kInfinity}] = 1.0;
    u.seminorms[{2, kInfinity}] = pi * pi;
  }
  return u;
}

FunctionSpec power_counterexample(double p) {
  require(p > 2.0 && std::isfinite(p), "power_counterexample: p must be in (2, inf)");
  const double a = 2.0 - 1.0 / p;
  FunctionSpec u;
  u.name = "x^(2-1/p) - x, p=" + std::to_string(p);
  u.dimension = 1;
  u.value = [a](const Vec2& x) { return std::pow(x.x, a) - x.x; };
  u.gradient = [a](const Vec2& x) { return Vec2{a * std::pow(x.x, a - 1.0) - 1.0, 0.0}; };
  u.derivatives[1] = [a](const Vec2& x) {
    return std::vector<double>{a * std::pow(x.x, a - 1.0) - 1.0};
  };
  return u;
}

FunctionSpec affine(int dimension, double a, double bx, double by) {
  FunctionSpec u;
  u.name = "affine";
  u.dimension = dimension;
  if (dimension == 1) by = 0.0;
  u.value = [=](const Vec2& x) { return a + bx * x.x + by * x.y; };
  u.gradient = [=](const Vec2&) { return Vec2{bx, by}; };
  u.derivatives[2] = [dimension](const Vec2&) {
    return std::vector<double>(dimension == 1 ? 1 : 3, 0.0);
  };
  return u;
}

FunctionSpec quadratic(int dimension) {
  FunctionSpec u;
  u.dimension = dimension;
  if (dimension == 1) {
    u.name = "x^2";
    u.value = [](const Vec2& x) { return x.x * x.x; };
    u.gradient = [](const Vec2& x) { return Vec2{2.0 * x.x, 0.0}; };
    u.derivatives[2] = [](const Vec2&) { return std::vector<double>{2.0}; };
  } else {
    u.name = "x^2 + xy - y^2";
    u.value = [](const Vec2& x) { return x.x * x.x + x.x * x.y - x.y * x.y; };
    u.gradient = [](const Vec2& x) { return Vec2{2.0 * x.x + x.y, x.x - 2.0 * x.y}; };
    u.derivatives[2] = [](const Vec2&) { return std::vector<double>{2.0, 1.0, -2.0}; };
  }
  return u;
}

FunctionSpec zero(int dimension) {
  FunctionSpec u = affine(dimension, 0.0, 0.0, 0.0);
  u.name = "0";
  return u;
}

FunctionSpec by_name(const std::string& name, int dimension) {
  if (name == "sin") return sine_product(dimension);
  if (name == "x") return affine(dimension, 0.0, 1.0, 0.0);
  if (name == "quadratic") return quadratic(dimension);
  if (name == "zero") return zero(dimension);
  if (name.rfind("power:", 0) == 0) {
    require(dimension == 1, "power:<p> is only defined in one dimension");
    double p = 0.0;
    try {
      p = std::stod(name.substr(6));
    } catch (const std::exception&) {
      fail(ErrorCode::invalid_argument, "malformed exponent in `" + name + "`");
    }
    return power_counterexample(p);
  }
  fail(ErrorCode::invalid_argument, "unknown function `" + name + "`");
}

}  // namespace superclose::functions
