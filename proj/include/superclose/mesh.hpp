#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "superclose/core.hpp"

namespace superclose {

/// Affine geometry of one simplex (interval or triangle).
struct ElementGeometry {
  int dimension = 1;
  std::array<Vec2, 3> vertices{};
  double measure = 0.0;
  /// Gradients of the barycentric coordinates; constant on the element.
  std::array<Vec2, 3> barycentric_gradients{};

  int num_vertices() const noexcept { return dimension + 1; }

  /// Reference coordinates (t) on [0,1] or (xi, eta) on the unit right
  /// triangle to physical coordinates.
  Vec2 map(const Vec2& reference) const noexcept;

  std::array<double, 3> barycentric(const Vec2& x) const noexcept;

  /// True when every barycentric coordinate is >= -tolerance.
  bool contains(const Vec2& x, double tolerance) const noexcept;

  double diameter() const noexcept;
  double inradius() const noexcept;
};

/// Conforming simplicial mesh of the unit interval or the unit square.
/// Immutable after construction.
class Mesh {
 public:
  /// `connectivity` holds dimension+1 node indices per element; triangles
  /// must be counterclockwise. Throws degenerate_mesh on non-positive measure.
  Mesh(int dimension, std::vector<Vec2> nodes, std::vector<int> connectivity);

  int dimension() const noexcept { return dimension_; }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  std::size_t num_elements() const noexcept { return connectivity_.size() / vertices_per_element(); }
  std::size_t vertices_per_element() const noexcept { return static_cast<std::size_t>(dimension_) + 1; }

  const std::vector<Vec2>& nodes() const noexcept { return nodes_; }
  const Vec2& node(std::size_t i) const { return nodes_.at(i); }
  std::span<const int> element(std::size_t k) const;
  const std::vector<int>& connectivity() const noexcept { return connectivity_; }

  const std::vector<int>& boundary_nodes() const noexcept { return boundary_nodes_; }
  bool is_boundary_node(std::size_t i) const { return on_boundary_.at(i); }

  /// Maximum element diameter.
  double h() const noexcept { return h_; }
  double element_measure(std::size_t k) const { return measures_.at(k); }
  double total_measure() const noexcept;

  ElementGeometry geometry(std::size_t k) const;

  /// Largest diameter/inradius ratio over all elements (2-D); 2 in 1-D.
  double max_shape_ratio() const;

 private:
  int dimension_;
  std::vector<Vec2> nodes_;
  std::vector<int> connectivity_;
  std::vector<int> boundary_nodes_;
  std::vector<bool> on_boundary_;
  std::vector<double> measures_;
  double h_ = 0.0;
};

/// Domain measure of the unit interval / unit square.
inline constexpr double kDomainMeasure = 1.0;

/// Tolerance for "same coordinate" when comparing nodes of two meshes.
inline constexpr double kCoordinateTolerance = 1e-14;

bool on_domain_boundary(const Vec2& x, int dimension) noexcept;
double distance_to_boundary(const Vec2& x, int dimension) noexcept;

Mesh build_uniform_interval(int n);
Mesh build_uniform_square(int n);

/// Moves the interior node closest to `point` (lowest index on ties).
Mesh perturb_node_nearest(const Mesh& m, const Vec2& point, const Vec2& displacement);

/// Moves every interior node whose distance to the boundary equals
/// `band_distance` (within 1e-12).
Mesh perturb_boundary_band(const Mesh& m, double band_distance, const Vec2& displacement);

/// Two meshes of the same domain plus the elements they have in common.
class MeshPair {
 public:
  using ElementMatch = std::pair<std::size_t, std::size_t>;

  const Mesh& mesh_a() const noexcept { return *a_; }
  const Mesh& mesh_b() const noexcept { return *b_; }
  const std::shared_ptr<const Mesh>& mesh_a_ptr() const noexcept { return a_; }
  const std::shared_ptr<const Mesh>& mesh_b_ptr() const noexcept { return b_; }

  /// (index in a, index in b), sorted by the a-index.
  const std::vector<ElementMatch>& shared_elements() const noexcept { return shared_; }
  /// Partner element in the other mesh, or -1 when the element differs.
  long partner_in_b(std::size_t ka) const { return a_to_b_.at(ka); }
  long partner_in_a(std::size_t kb) const { return b_to_a_.at(kb); }

  double differing_region_measure() const noexcept { return differing_measure_; }
  /// The same quantity computed from mesh b's shared elements.
  double differing_region_measure_b() const noexcept { return differing_measure_b_; }
  double gamma_nominal() const noexcept { return gamma_nominal_; }

 private:
  friend MeshPair classify_pair(std::shared_ptr<const Mesh>, std::shared_ptr<const Mesh>, double);

  std::shared_ptr<const Mesh> a_;
  std::shared_ptr<const Mesh> b_;
  std::vector<ElementMatch> shared_;
  std::vector<long> a_to_b_;
  std::vector<long> b_to_a_;
  double differing_measure_ = 0.0;
  double differing_measure_b_ = 0.0;
  double gamma_nominal_ = 0.0;
};

MeshPair classify_pair(std::shared_ptr<const Mesh> a, std::shared_ptr<const Mesh> b,
                       double gamma_nominal);

/// Plain-text export: `dim n_nodes n_elements`, node lines, element lines,
/// then one line of boundary node indices.
void write_mesh(std::ostream& out, const Mesh& m);
Mesh read_mesh(std::istream& in);

}  // namespace superclose
