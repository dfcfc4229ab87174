#pragma once

#include <iosfwd>
#include <string>

#include "superclose/study.hpp"

namespace superclose {

/// Parses the `key = value` study format (one pair per line, `#` starts a
/// comment). Keys: name, dimension, degree, form, base, kappa, velocity,
/// perturbation, point, fraction, u, n0, levels, norms, gamma, eta, delta,
/// mu, nu, q. Errors are parse_error naming the source, line and key.
///
/// form = perturbed means a_h = base (default stiffness) and
/// a_h⁺ = base + h^delta mass.
StudyConfig parse_study_config(std::istream& in, const std::string& source = "<config>");
StudyConfig parse_study_config_text(const std::string& text, const std::string& source = "<config>");
StudyConfig load_study_config(const std::string& path);

/// The effective configuration in the same format (parse(echo(c)) == c).
std::string echo_config(const StudyConfig& cfg);

}  // namespace superclose
