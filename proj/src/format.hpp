#pragma once

#include <cstdio>
#include <string>

namespace superclose {

/// Round-trippable decimal representation (17 significant digits).
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Scientific notation with `digits` significant digits.
inline std::string fmt_sci(double v, int digits = 5) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
  return buf;
}

inline std::string fmt_fixed(double v, int decimals = 4) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace superclose
