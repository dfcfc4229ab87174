#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "superclose/core.hpp"
#include "superclose/function_spec.hpp"
#include "superclose/mesh.hpp"

namespace superclose {

/// Largest number of local shape functions (P2 triangle).
inline constexpr std::size_t kMaxLocalDofs = 6;

/// Number of local shape functions of the Lagrange element.
std::size_t local_dof_count(int dimension, int degree);

/// Lagrange shape functions evaluated at barycentric coordinates `lambda`.
/// Local ordering: vertices first, then edge midpoints (0-1, 1-2, 2-0).
void shape_values(int dimension, int degree, const std::array<double, 3>& lambda,
                  std::span<double> out);
void shape_gradients(int dimension, int degree, const std::array<double, 3>& lambda,
                     const std::array<Vec2, 3>& barycentric_gradients, std::span<Vec2> out);

/// Continuous Lagrange space of degree 1 or 2, optionally with homogeneous
/// Dirichlet conditions on the boundary of the unit domain.
class FeSpace {
 public:
  FeSpace(std::shared_ptr<const Mesh> mesh, int degree, bool dirichlet);

  const Mesh& mesh() const noexcept { return *mesh_; }
  const std::shared_ptr<const Mesh>& mesh_ptr() const noexcept { return mesh_; }
  int degree() const noexcept { return degree_; }
  int dimension() const noexcept { return mesh_->dimension(); }
  bool dirichlet() const noexcept { return dirichlet_; }

  std::size_t num_dofs() const noexcept { return dof_coords_.size(); }
  std::size_t num_free() const noexcept { return free_dofs_.size(); }
  std::size_t dofs_per_element() const noexcept { return dofs_per_element_; }

  const std::vector<Vec2>& dof_coords() const noexcept { return dof_coords_; }
  std::span<const int> element_dofs(std::size_t k) const;
  /// Elements whose closure contains the DOF (support of its shape function).
  const std::vector<int>& dof_support(std::size_t dof) const { return support_.at(dof); }

  bool is_constrained(std::size_t dof) const { return constrained_.at(dof); }
  const std::vector<bool>& dirichlet_mask() const noexcept { return constrained_; }
  /// Index among free DOFs, or -1 for constrained DOFs.
  long free_index(std::size_t dof) const { return free_index_.at(dof); }
  const std::vector<int>& free_dofs() const noexcept { return free_dofs_; }

 private:
  std::shared_ptr<const Mesh> mesh_;
  int degree_;
  bool dirichlet_;
  std::size_t dofs_per_element_ = 0;
  std::vector<Vec2> dof_coords_;
  std::vector<int> element_dofs_;
  std::vector<std::vector<int>> support_;
  std::vector<bool> constrained_;
  std::vector<long> free_index_;
  std::vector<int> free_dofs_;
};

struct PointValue {
  double value = 0.0;
  Vec2 gradient;
};

/// Coefficient vector over the DOFs of a space. Immutable.
class FeFunction {
 public:
  /// Throws invalid_argument if the length is wrong or a constrained entry
  /// is non-zero.
  FeFunction(std::shared_ptr<const FeSpace> space, std::vector<double> coeffs);

  static FeFunction zero(std::shared_ptr<const FeSpace> space);
  /// Builds a function from values at the free DOFs only.
  static FeFunction from_free(std::shared_ptr<const FeSpace> space, std::span<const double> free);

  const FeSpace& space() const noexcept { return *space_; }
  const std::shared_ptr<const FeSpace>& space_ptr() const noexcept { return space_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  std::vector<double> free_values() const;

  /// Value and gradient of the restriction to element k at physical point x.
  PointValue on_element(std::size_t k, const Vec2& x) const;
  PointValue on_element(std::size_t k, const ElementGeometry& g, const Vec2& x) const;

 private:
  std::shared_ptr<const FeSpace> space_;
  std::vector<double> coeffs_;
};

/// Locates the element containing x (lowest index on ties) and evaluates.
PointValue evaluate(const FeFunction& f, const Vec2& x);

/// i_h u: u sampled at the free DOFs, zero at constrained ones.
FeFunction interpolate_nodal(std::shared_ptr<const FeSpace> space, const FunctionSpec& u);

/// Correspondence between DOFs whose shape functions coincide in two spaces
/// over a mesh pair: same coordinate and identical support elements.
class SharedDofMap {
 public:
  SharedDofMap(const MeshPair& pair, std::shared_ptr<const FeSpace> space_a,
               std::shared_ptr<const FeSpace> space_b);

  const FeSpace& space_a() const noexcept { return *a_; }
  const FeSpace& space_b() const noexcept { return *b_; }
  const std::shared_ptr<const FeSpace>& space_a_ptr() const noexcept { return a_; }
  const std::shared_ptr<const FeSpace>& space_b_ptr() const noexcept { return b_; }

  /// Partner DOF in space b, or -1 if the shape function is not shared.
  long a_to_b(std::size_t dof) const { return a_to_b_.at(dof); }
  long b_to_a(std::size_t dof) const { return b_to_a_.at(dof); }
  std::size_t num_shared() const noexcept { return num_shared_; }

 private:
  std::shared_ptr<const FeSpace> a_;
  std::shared_ptr<const FeSpace> b_;
  std::vector<long> a_to_b_;
  std::vector<long> b_to_a_;
  std::size_t num_shared_ = 0;
};

/// pi_h f: keeps only the coefficients of shared shape functions. The
/// result lives in the same space as f. f must belong to one of the two
/// spaces of `map`.
FeFunction intersection_project(const SharedDofMap& map, const FeFunction& f);

/// Convenience overload building the DOF map on the fly.
FeFunction intersection_project(const MeshPair& pair, std::shared_ptr<const FeSpace> space_a,
                                std::shared_ptr<const FeSpace> space_b, const FeFunction& f);

/// Re-expresses a function in V_h ∩ V_h⁺ (e.g. the output of
/// intersection_project) in the other space of the pair.
FeFunction transfer_shared(const SharedDofMap& map, const FeFunction& f);

/// Plain-text export: `n_dofs` then one coefficient per line (17 digits).
void write_function(std::ostream& out, const FeFunction& f);
std::vector<double> read_coefficients(std::istream& in);

}  // namespace superclose
