#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace superclose {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Failure categories surfaced by the library. The numeric values are part of
/// the C API (see superclose.h) and must stay in sync with sc_status.
enum class ErrorCode : int {
  invalid_argument = 1,
  degenerate_mesh = 2,
  out_of_domain = 3,
  coercivity_violation = 4,
  solver_failure = 5,
  geometry_failure = 6,
  parse_error = 7,
  io_error = 8,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, const std::string& what) {
  if (!condition) fail(ErrorCode::invalid_argument, what);
}

/// Point or vector in the plane. One-dimensional quantities use `x` only.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) noexcept {
    x += o.x;
    y += o.y;
    return *this;
  }
  constexpr Vec2& operator-=(const Vec2& o) noexcept {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  constexpr Vec2& operator*=(double s) noexcept {
    x *= s;
    y *= s;
    return *this;
  }
  friend constexpr Vec2 operator+(Vec2 a, const Vec2& b) noexcept { return a += b; }
  friend constexpr Vec2 operator-(Vec2 a, const Vec2& b) noexcept { return a -= b; }
  friend constexpr Vec2 operator*(Vec2 a, double s) noexcept { return a *= s; }
  friend constexpr Vec2 operator*(double s, Vec2 a) noexcept { return a *= s; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) noexcept { return a.x * b.x + a.y * b.y; }
constexpr double cross(const Vec2& a, const Vec2& b) noexcept { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) noexcept { return std::hypot(a.x, a.y); }

/// Exponent of h in the bilinear-form perturbation bound. The infinite value
/// encodes identical forms and is kept apart from floating-point infinity so
/// that arithmetic on it is always explicit.
class Delta {
 public:
  static constexpr Delta infinite() noexcept { return Delta(true, 0.0); }
  static Delta finite(double value) {
    require(value >= 0.0 && std::isfinite(value), "delta must be finite and >= 0");
    return Delta(false, value);
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful when !is_infinite().
  constexpr double value() const noexcept { return value_; }

  friend constexpr bool operator==(const Delta&, const Delta&) = default;

 private:
  constexpr Delta(bool infinite, double value) noexcept : infinite_(infinite), value_(value) {}

  bool infinite_;
  double value_;
};

}  // namespace superclose
