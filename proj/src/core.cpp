#include "superclose/core.hpp"

namespace superclose {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::degenerate_mesh: return "degenerate mesh";
    case ErrorCode::out_of_domain: return "point outside domain";
    case ErrorCode::coercivity_violation: return "coercivity violation";
    case ErrorCode::solver_failure: return "solver failure";
    case ErrorCode::geometry_failure: return "geometry failure";
    case ErrorCode::parse_error: return "parse error";
    case ErrorCode::io_error: return "i/o error";
  }
  return "unknown error";
}

}  // namespace superclose
