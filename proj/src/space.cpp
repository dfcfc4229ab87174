#include "superclose/space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "format.hpp"

namespace superclose {

std::size_t local_dof_count(int dimension, int degree) {
  if (dimension == 1) return degree == 1 ? 2 : 3;
  return degree == 1 ? 3 : 6;
}

void shape_values(int dimension, int degree, const std::array<double, 3>& l,
                  std::span<double> out) {
  if (degree == 1) {
    for (int i = 0; i <= dimension; ++i) out[i] = l[i];
    return;
  }
  for (int i = 0; i <= dimension; ++i) out[i] = l[i] * (2.0 * l[i] - 1.0);
  if (dimension == 1) {
    out[2] = 4.0 * l[0] * l[1];
  } else {
    out[3] = 4.0 * l[0] * l[1];
    out[4] = 4.0 * l[1] * l[2];
    out[5] = 4.0 * l[2] * l[0];
  }
}

void shape_gradients(int dimension, int degree, const std::array<double, 3>& l,
                     const std::array<Vec2, 3>& gl, std::span<Vec2> out) {
  if (degree == 1) {
    for (int i = 0; i <= dimension; ++i) out[i] = gl[i];
    return;
  }
  for (int i = 0; i <= dimension; ++i) out[i] = (4.0 * l[i] - 1.0) * gl[i];
  auto edge = [&](int i, int j) { return 4.0 * (l[j] * gl[i] + l[i] * gl[j]); };
  if (dimension == 1) {
    out[2] = edge(0, 1);
  } else {
    out[3] = edge(0, 1);
    out[4] = edge(1, 2);
    out[5] = edge(2, 0);
  }
}

// ---------------------------------------------------------------------------
// FeSpace

FeSpace::FeSpace(std::shared_ptr<const Mesh> mesh, int degree, bool dirichlet)
    : mesh_(std::move(mesh)), degree_(degree), dirichlet_(dirichlet) {
  require(mesh_ != nullptr, "FeSpace: null mesh");
  require(degree_ == 1 || degree_ == 2, "FeSpace: degree must be 1 or 2");
  const Mesh& m = *mesh_;
  const int dim = m.dimension();
  dofs_per_element_ = local_dof_count(dim, degree_);
  const std::size_t ne = m.num_elements();

  dof_coords_ = m.nodes();
  element_dofs_.reserve(ne * dofs_per_element_);

  std::map<std::pair<int, int>, int> edge_index;
  auto edge_dof = [&](int i, int j) {
    const auto key = std::minmax(i, j);
    auto [it, inserted] = edge_index.try_emplace(key, static_cast<int>(dof_coords_.size()));
    if (inserted) dof_coords_.push_back(0.5 * (m.node(i) + m.node(j)));
    return it->second;
  };

  for (std::size_t k = 0; k < ne; ++k) {
    const auto v = m.element(k);
    element_dofs_.insert(element_dofs_.end(), v.begin(), v.end());
    if (degree_ == 2) {
      if (dim == 1) {
        element_dofs_.push_back(edge_dof(v[0], v[1]));
      } else {
        element_dofs_.push_back(edge_dof(v[0], v[1]));
        element_dofs_.push_back(edge_dof(v[1], v[2]));
        element_dofs_.push_back(edge_dof(v[2], v[0]));
      }
    }
  }

  const std::size_t nd = dof_coords_.size();
  support_.assign(nd, {});
  for (std::size_t k = 0; k < ne; ++k) {
    for (int d : element_dofs(k)) support_[d].push_back(static_cast<int>(k));
  }

  constrained_.assign(nd, false);
  free_index_.assign(nd, -1);
  for (std::size_t d = 0; d < nd; ++d) {
    constrained_[d] = dirichlet_ && on_domain_boundary(dof_coords_[d], dim);
    if (!constrained_[d]) {
      free_index_[d] = static_cast<long>(free_dofs_.size());
      free_dofs_.push_back(static_cast<int>(d));
    }
  }
}

std::span<const int> FeSpace::element_dofs(std::size_t k) const {
  require(k < mesh_->num_elements(), "element index out of range");
  return std::span<const int>(element_dofs_).subspan(k * dofs_per_element_, dofs_per_element_);
}

// ---------------------------------------------------------------------------
// FeFunction

FeFunction::FeFunction(std::shared_ptr<const FeSpace> space, std::vector<double> coeffs)
    : space_(std::move(space)), coeffs_(std::move(coeffs)) {
  require(space_ != nullptr, "FeFunction: null space");
  require(coeffs_.size() == space_->num_dofs(),
          "FeFunction: expected " + std::to_string(space_->num_dofs()) + " coefficients, got " +
              std::to_string(coeffs_.size()));
  for (std::size_t d = 0; d < coeffs_.size(); ++d) {
    require(!space_->is_constrained(d) || coeffs_[d] == 0.0,
            "FeFunction: constrained DOF " + std::to_string(d) + " has non-zero coefficient");
  }
}

FeFunction FeFunction::zero(std::shared_ptr<const FeSpace> space) {
  const std::size_t n = space->num_dofs();
  return FeFunction(std::move(space), std::vector<double>(n, 0.0));
}

FeFunction FeFunction::from_free(std::shared_ptr<const FeSpace> space,
                                 std::span<const double> free) {
  require(free.size() == space->num_free(), "FeFunction::from_free: length mismatch");
  std::vector<double> c(space->num_dofs(), 0.0);
  const auto& fd = space->free_dofs();
  for (std::size_t i = 0; i < fd.size(); ++i) c[fd[i]] = free[i];
  return FeFunction(std::move(space), std::move(c));
}

std::vector<double> FeFunction::free_values() const {
  std::vector<double> out;
  out.reserve(space_->num_free());
  for (int d : space_->free_dofs()) out.push_back(coeffs_[d]);
  return out;
}

PointValue FeFunction::on_element(std::size_t k, const Vec2& x) const {
  return on_element(k, space_->mesh().geometry(k), x);
}

PointValue FeFunction::on_element(std::size_t k, const ElementGeometry& g, const Vec2& x) const {
  const FeSpace& s = *space_;
  const auto lambda = g.barycentric(x);
  std::array<double, kMaxLocalDofs> phi{};
  std::array<Vec2, kMaxLocalDofs> dphi{};
  const std::size_t n = s.dofs_per_element();
  shape_values(s.dimension(), s.degree(), lambda, std::span(phi).first(n));
  shape_gradients(s.dimension(), s.degree(), lambda, g.barycentric_gradients,
                  std::span(dphi).first(n));
  PointValue pv;
  const auto dofs = s.element_dofs(k);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = coeffs_[dofs[i]];
    pv.value += c * phi[i];
    pv.gradient += c * dphi[i];
  }
  return pv;
}

PointValue evaluate(const FeFunction& f, const Vec2& x) {
  const Mesh& m = f.space().mesh();
  constexpr double tol = 1e-12;
  const bool inside_x = x.x >= -tol && x.x <= 1.0 + tol;
  const bool inside_y = m.dimension() == 1 || (x.y >= -tol && x.y <= 1.0 + tol);
  if (!inside_x || !inside_y) {
    fail(ErrorCode::out_of_domain,
         "evaluate: point (" + fmt_double(x.x) + ", " + fmt_double(x.y) + ") is outside the domain");
  }
  for (std::size_t k = 0; k < m.num_elements(); ++k) {
    const ElementGeometry g = m.geometry(k);
    if (g.contains(x, tol)) return f.on_element(k, g, x);
  }
  fail(ErrorCode::out_of_domain, "evaluate: no element contains the point");
}

FeFunction interpolate_nodal(std::shared_ptr<const FeSpace> space, const FunctionSpec& u) {
  require(static_cast<bool>(u.value), "interpolate_nodal: function has no value evaluator");
  require(u.dimension == space->dimension(), "interpolate_nodal: dimension mismatch");
  std::vector<double> c(space->num_dofs(), 0.0);
  for (int d : space->free_dofs()) c[d] = u.value(space->dof_coords()[d]);
  return FeFunction(std::move(space), std::move(c));
}

// ---------------------------------------------------------------------------
// Intersection projector

namespace {

bool same_coord(const Vec2& a, const Vec2& b) noexcept {
  return std::abs(a.x - b.x) <= kCoordinateTolerance && std::abs(a.y - b.y) <= kCoordinateTolerance;
}

/// Partner of `dof` of space `from` in space `to`, or -1.
long find_partner(const FeSpace& from, const FeSpace& to, std::size_t dof,
                  const std::function<long(std::size_t)>& elem_from_to,
                  const std::function<long(std::size_t)>& elem_to_from) {
  const auto& sup = from.dof_support(dof);
  for (int k : sup) {
    if (elem_from_to(k) < 0) return -1;
  }
  const Vec2 x = from.dof_coords()[dof];
  long partner = -1;
  for (int d : to.element_dofs(static_cast<std::size_t>(elem_from_to(sup.front())))) {
    if (same_coord(to.dof_coords()[d], x)) {
      partner = d;
      break;
    }
  }
  if (partner < 0) return -1;
  const auto& sup_to = to.dof_support(static_cast<std::size_t>(partner));
  if (sup_to.size() != sup.size()) return -1;
  for (int k : sup_to) {
    const long back = elem_to_from(k);
    if (back < 0 || std::find(sup.begin(), sup.end(), back) == sup.end()) return -1;
  }
  return partner;
}

}  // namespace

SharedDofMap::SharedDofMap(const MeshPair& pair, std::shared_ptr<const FeSpace> space_a,
                           std::shared_ptr<const FeSpace> space_b)
    : a_(std::move(space_a)), b_(std::move(space_b)) {
  require(a_ && b_, "SharedDofMap: null space");
  require(a_->degree() == b_->degree(), "intersection projector: spaces have different degrees");
  require(a_->dirichlet() == b_->dirichlet(),
          "intersection projector: spaces have different boundary conditions");
  require(a_->mesh_ptr() == pair.mesh_a_ptr() && b_->mesh_ptr() == pair.mesh_b_ptr(),
          "intersection projector: spaces are not built on the pair's meshes");

  auto ab = [&pair](std::size_t k) { return pair.partner_in_b(k); };
  auto ba = [&pair](std::size_t k) { return pair.partner_in_a(k); };
  a_to_b_.assign(a_->num_dofs(), -1);
  b_to_a_.assign(b_->num_dofs(), -1);
  for (std::size_t d = 0; d < a_->num_dofs(); ++d) {
    const long p = find_partner(*a_, *b_, d, ab, ba);
    if (p >= 0) {
      a_to_b_[d] = p;
      b_to_a_[static_cast<std::size_t>(p)] = static_cast<long>(d);
      ++num_shared_;
    }
  }
}

namespace {

bool belongs_to(const FeFunction& f, const FeSpace& s) {
  if (&f.space() == &s) return true;
  return f.space().mesh_ptr() == s.mesh_ptr() && f.space().degree() == s.degree() &&
         f.space().dirichlet() == s.dirichlet();
}

}  // namespace

FeFunction intersection_project(const SharedDofMap& map, const FeFunction& f) {
  const bool in_a = belongs_to(f, map.space_a());
  const bool in_b = !in_a && belongs_to(f, map.space_b());
  require(in_a || in_b, "intersection_project: function does not belong to either space");
  if (f.space().degree() != map.space_a().degree()) {
    fail(ErrorCode::invalid_argument, "intersection_project: degree mismatch");
  }
  std::vector<double> c(f.coeffs().size(), 0.0);
  for (std::size_t d = 0; d < c.size(); ++d) {
    const long partner = in_a ? map.a_to_b(d) : map.b_to_a(d);
    if (partner >= 0) c[d] = f.coeffs()[d];
  }
  return FeFunction(f.space_ptr(), std::move(c));
}

FeFunction intersection_project(const MeshPair& pair, std::shared_ptr<const FeSpace> space_a,
                                std::shared_ptr<const FeSpace> space_b, const FeFunction& f) {
  require(space_a && space_b, "intersection_project: null space");
  require(space_a->degree() == space_b->degree(), "intersection_project: degree mismatch");
  return intersection_project(SharedDofMap(pair, std::move(space_a), std::move(space_b)), f);
}

FeFunction transfer_shared(const SharedDofMap& map, const FeFunction& f) {
  const bool in_a = belongs_to(f, map.space_a());
  const bool in_b = !in_a && belongs_to(f, map.space_b());
  require(in_a || in_b, "transfer_shared: function does not belong to either space");
  const auto& target = in_a ? map.space_b_ptr() : map.space_a_ptr();
  std::vector<double> c(target->num_dofs(), 0.0);
  for (std::size_t d = 0; d < f.coeffs().size(); ++d) {
    const long partner = in_a ? map.a_to_b(d) : map.b_to_a(d);
    if (partner >= 0) {
      c[static_cast<std::size_t>(partner)] = f.coeffs()[d];
    } else {
      require(f.coeffs()[d] == 0.0,
              "transfer_shared: function is not representable in the other space");
    }
  }
  return FeFunction(target, std::move(c));
}

// ---------------------------------------------------------------------------
// Text I/O

void write_function(std::ostream& out, const FeFunction& f) {
  out << f.coeffs().size() << '\n';
  for (double c : f.coeffs()) out << fmt_double(c) << '\n';
}

std::vector<double> read_coefficients(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n)) fail(ErrorCode::parse_error, "function file must start with `n_dofs`");
  std::vector<double> c(n);
  for (double& v : c) {
    if (!(in >> v)) fail(ErrorCode::parse_error, "truncated coefficient list");
  }
  return c;
}

}  // namespace superclose
