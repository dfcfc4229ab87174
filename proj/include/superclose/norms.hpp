#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "superclose/function_spec.hpp"
#include "superclose/mesh.hpp"
#include "superclose/space.hpp"

namespace superclose {

/// ‖·‖_{s,eta}: (sum_{|alpha|<=s} int |d^alpha v|^eta)^{1/eta}, or
/// max_{|alpha|<=s} sup |d^alpha v| for eta = infinity.
struct NormSpec {
  int s = 0;
  double eta = 2.0;
  /// Restricts integration to these element indices when set.
  std::optional<std::vector<std::size_t>> region;

  static NormSpec l2() { return {0, 2.0, {}}; }
  static NormSpec h1() { return {1, 2.0, {}}; }

  void validate() const;
  /// "L2", "H1", or "W^{s,eta}".
  std::string label() const;
};

/// Points per element used for sampled suprema (eta = infinity).
inline constexpr int kSupSamples1d = 25;
inline constexpr int kSupSamples2d = 45;

/// ‖f - u‖_{s,eta} with elementwise quadrature of exactness 2 degree + 6.
/// For eta = infinity the result is a sampled supremum (a lower bound).
double sobolev_norm_exact_diff(const FeFunction& f, const FunctionSpec& u, const NormSpec& spec);

/// ‖f‖_{s,eta}.
double sobolev_norm(const FeFunction& f, const NormSpec& spec);

/// The individual terms ‖d^alpha f‖_{0,eta} for |alpha| <= s, ordered
/// (value, d/dx[, d/dy]).
std::vector<double> component_norms(const FeFunction& f, int s, double eta);

/// Two discrete functions on the two meshes of a pair.
struct CrossMeshDiff {
  const FeFunction& f_a;
  const FeFunction& f_b;
  const MeshPair& pair;
};

struct CrossMeshResult {
  double value = 0.0;
  double shared_part = 0.0;     ///< squared contribution of shared elements
  double differing_part = 0.0;  ///< squared contribution of clipped fragments
  double fragment_measure = 0.0;
  std::size_t fragments = 0;
};

/// ‖f_a - f_b‖_{s,2} integrated exactly: single-polynomial quadrature on shared
/// elements, convex clipping of overlapping elements in the differing region.
CrossMeshResult cross_mesh_norm_detailed(const CrossMeshDiff& d, const NormSpec& spec);
double cross_mesh_norm(const CrossMeshDiff& d, const NormSpec& spec);

struct SeminormValue {
  double value = 0.0;
  bool approximate = false;
};

/// |u|_{k,eta}: the analytic value when registered, otherwise a dense-sampling
/// (eta = infinity) or composite-quadrature approximation flagged as such.
SeminormValue seminorm_exact(const FunctionSpec& u, int k, double eta);

/// Measure of the union of elements on which |f| exceeds `threshold` at some
/// DOF or quadrature point.
double support_measure(const FeFunction& f, double threshold = 1e-13);

}  // namespace superclose
