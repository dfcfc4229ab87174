#pragma once

#include <optional>
#include <string>
#include <vector>

#include "superclose/forms.hpp"
#include "superclose/norms.hpp"
#include "superclose/projection.hpp"
#include "superclose/theory.hpp"

namespace superclose {

enum class PerturbationKind {
  identical,            ///< mesh b is a copy of mesh a
  single_node,          ///< node nearest `point` moved by fraction*h in +x
  boundary_band,        ///< 2-D: nodes at distance h/sqrt(2) from the boundary moved by fraction*h
  shifted_second_node,  ///< 1-D: node at x = h moved by fraction*h
};

std::string to_string(PerturbationKind kind);

struct Perturbation {
  PerturbationKind kind = PerturbationKind::identical;
  Vec2 point;
  double fraction = 0.0;

  static Perturbation identical() { return {}; }
  static Perturbation single_node(Vec2 point, double fraction) {
    return {PerturbationKind::single_node, point, fraction};
  }
  static Perturbation boundary_band(double fraction) {
    return {PerturbationKind::boundary_band, {}, fraction};
  }
  static Perturbation shifted_second_node(double fraction) {
    return {PerturbationKind::shifted_second_node, {}, fraction};
  }

  /// Nominal gamma of the resulting family (infinity for identical meshes).
  double nominal_gamma(int dimension) const;
};

struct StudyConfig {
  std::string name = "study";
  int dimension = 1;
  int degree = 1;
  BilinearFormSpec form = BilinearFormSpec::mass();  ///< a_h
  std::optional<BilinearFormSpec> form_plus;         ///< a_h⁺; a_h when unset
  Perturbation perturbation;
  std::string u = "sin";
  int n0 = 8;
  int levels = 6;
  std::vector<NormSpec> norms{NormSpec::l2()};
  /// gamma, eta, delta, mu, nu; s, r and dimension are filled in from the
  /// form and degree by `rate_inputs()`.
  RateInputs rates;
  SolverConfig solver;

  void validate() const;
  const BilinearFormSpec& plus_form() const { return form_plus ? *form_plus : form; }
  RateInputs rate_inputs() const;
};

/// Builds the pair at subdivision n for the configured dimension and
/// perturbation recipe (displacement fraction*h in +x, h = max diameter).
MeshPair build_study_pair(const StudyConfig& cfg, int n);

struct StudyRow {
  int level = 0;
  int n = 0;
  double h = 0.0;
  double h_ratio = 1.0;  ///< h0/h
  std::vector<double> values;                ///< ‖r_h⁺u - r_h u‖ per norm
  std::vector<std::optional<double>> orders;  ///< absent at level 0
  std::vector<double> naive_bounds;          ///< ‖r_h⁺u - u‖ + ‖u - r_h u‖
  /// ‖(r_h⁺u - r_h u) - pi_h(r_h⁺u - r_h u)‖, the part outside V_h ∩ V_h⁺.
  std::vector<double> projector_defects;
  double differing_measure = 0.0;
};

struct StudyResult {
  StudyConfig config;
  std::vector<StudyRow> rows;
  std::optional<double> sigma;
  std::optional<double> sigma_prime;
  std::vector<std::optional<double>> predicted_orders;  ///< per norm
  std::vector<bool> monotone;                           ///< values strictly decreasing, per norm
  double seconds = 0.0;

  std::vector<double> values(std::size_t norm) const;
  std::vector<double> h_values() const;
  std::optional<double> final_order(std::size_t norm) const;
};

/// ‖r_h⁺u - r_h u‖ on refinements n = n0 2^k, k < levels.
StudyResult run_projection_study(const StudyConfig& cfg);

struct RegularityResult {
  double p = 0.0;
  double rate_l2 = 0.0;  ///< 5/2 - 1/p
  double rate_h1 = 0.0;  ///< 3/2 - 1/p
  StudyResult study;     ///< norms: L2 then H1
};

/// u = x^{2-1/p} - x on the grid pair (0, h, 2h, ...) vs (0, 3h/2, 2h, ...),
/// degree 1, stiffness form, n0 = 8.
RegularityResult run_regularity_study(double p, int levels);

/// Same harness with an arbitrary function name (e.g. "sin").
StudyConfig regularity_config(const std::string& u, int levels);

struct PerturbedFormResult {
  Delta delta = Delta::infinite();
  StudyResult identical;  ///< identical meshes: only the form differs
  StudyResult nearby;     ///< gamma = 1 single-node pair (1-D)
};

/// a_h = stiffness, a_h⁺ = stiffness + h^delta mass; norms H1 then L2.
PerturbedFormResult run_perturbed_form_study(Delta delta, int levels, int degree = 1);

}  // namespace superclose
