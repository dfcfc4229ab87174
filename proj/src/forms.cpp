#include "superclose/forms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/SparseCholesky>

namespace superclose {

std::string to_string(FormKind kind) {
  switch (kind) {
    case FormKind::mass: return "mass";
    case FormKind::stiffness: return "stiffness";
    case FormKind::adr: return "adr";
    case FormKind::perturbed: return "perturbed";
  }
  return "?";
}

BilinearFormSpec BilinearFormSpec::mass() {
  BilinearFormSpec f;
  f.kind = FormKind::mass;
  return f;
}

BilinearFormSpec BilinearFormSpec::stiffness() {
  BilinearFormSpec f;
  f.kind = FormKind::stiffness;
  return f;
}

BilinearFormSpec BilinearFormSpec::adr(double kappa, VectorField velocity) {
  require(kappa >= 0.0, "adr form: kappa must be >= 0");
  BilinearFormSpec f;
  f.kind = FormKind::adr;
  f.kappa = kappa;
  f.velocity = std::move(velocity);
  return f;
}

BilinearFormSpec BilinearFormSpec::perturbed(const BilinearFormSpec& base, Delta delta,
                                             const BilinearFormSpec& perturbation) {
  BilinearFormSpec f;
  f.kind = FormKind::perturbed;
  f.base = std::make_shared<const BilinearFormSpec>(base);
  f.perturbation = std::make_shared<const BilinearFormSpec>(perturbation);
  f.delta = delta;
  f.mu = perturbation.order();
  f.nu = perturbation.order();
  f.q = 2.0;
  return f;
}

int BilinearFormSpec::order() const {
  switch (kind) {
    case FormKind::mass: return 0;
    case FormKind::stiffness:
    case FormKind::adr: return 1;
    case FormKind::perturbed: return std::max(base->order(), perturbation->order());
  }
  return 0;
}

bool BilinearFormSpec::symmetric() const {
  switch (kind) {
    case FormKind::mass:
    case FormKind::stiffness: return true;
    case FormKind::adr: return !velocity;
    case FormKind::perturbed: return base->symmetric() && perturbation->symmetric();
  }
  return false;
}

FormCoefficients form_coefficients(const BilinearFormSpec& form, const Vec2& x, double h) {
  switch (form.kind) {
    case FormKind::mass: return {1.0, 0.0, {}};
    case FormKind::stiffness: return {0.0, 1.0, {}};
    case FormKind::adr: {
      FormCoefficients c{form.kappa, 1.0, {}};
      if (form.velocity) c.advection = Vec2{} - form.velocity(x);
      return c;
    }
    case FormKind::perturbed: {
      FormCoefficients c = form_coefficients(*form.base, x, h);
      if (!form.delta.is_infinite()) {
        const double scale = std::pow(h, form.delta.value());
        const FormCoefficients p = form_coefficients(*form.perturbation, x, h);
        c.mass += scale * p.mass;
        c.stiffness += scale * p.stiffness;
        c.advection += scale * p.advection;
      }
      return c;
    }
  }
  return {};
}

int assembly_exactness(int degree) { return 2 * degree + 4; }

namespace {

std::array<double, 3> reference_barycentric(int dim, const Vec2& p) noexcept {
  if (dim == 1) return {1.0 - p.x, p.x, 0.0};
  return {1.0 - p.x - p.y, p.x, p.y};
}

double integrand(const FormCoefficients& c, double u, const Vec2& du, double w, const Vec2& dw) {
  return c.stiffness * dot(du, dw) + dot(c.advection, du) * w + c.mass * u * w;
}

/// Shape function values/gradients at the quadrature points of one element.
struct ElementBasis {
  std::size_t n = 0;
  std::vector<std::array<double, kMaxLocalDofs>> phi;
  std::vector<std::array<Vec2, kMaxLocalDofs>> dphi;
  std::vector<Vec2> x;
  std::vector<double> jxw;

  void reinit(const FeSpace& s, const ElementGeometry& g, const QuadratureRule& q) {
    n = s.dofs_per_element();
    const std::size_t nq = q.size();
    phi.resize(nq);
    dphi.resize(nq);
    x.resize(nq);
    jxw.resize(nq);
    const double ref_measure = s.dimension() == 1 ? 1.0 : 0.5;
    for (std::size_t iq = 0; iq < nq; ++iq) {
      const auto lambda = reference_barycentric(s.dimension(), q.points[iq]);
      shape_values(s.dimension(), s.degree(), lambda, std::span(phi[iq]).first(n));
      shape_gradients(s.dimension(), s.degree(), lambda, g.barycentric_gradients,
                      std::span(dphi[iq]).first(n));
      x[iq] = g.map(q.points[iq]);
      jxw[iq] = q.weights[iq] * g.measure / ref_measure;
    }
  }
};

void check_space_form(const FeSpace& s, const BilinearFormSpec& form) {
  if (form.kind == FormKind::perturbed) {
    require(form.base && form.perturbation, "perturbed form is missing its base or perturbation");
  }
  require(s.num_free() > 0, "space has no free degrees of freedom");
}

}  // namespace

SparseMatrix assemble_matrix(const FeSpace& s, const BilinearFormSpec& form) {
  check_space_form(s, form);
  const Mesh& m = s.mesh();
  const double h = m.h();
  const QuadratureRule& q = quadrature_rule(s.dimension(), assembly_exactness(s.degree()));
  const std::size_t nf = s.num_free();

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(m.num_elements() * s.dofs_per_element() * s.dofs_per_element());
  ElementBasis basis;
  std::array<std::array<double, kMaxLocalDofs>, kMaxLocalDofs> local{};
  for (std::size_t k = 0; k < m.num_elements(); ++k) {
    const ElementGeometry g = m.geometry(k);
    basis.reinit(s, g, q);
    const std::size_t n = basis.n;
    for (auto& row : local) row.fill(0.0);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const FormCoefficients c = form_coefficients(form, basis.x[iq], h);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          local[i][j] += basis.jxw[iq] * integrand(c, basis.phi[iq][j], basis.dphi[iq][j],
                                                   basis.phi[iq][i], basis.dphi[iq][i]);
        }
      }
    }
    const auto dofs = s.element_dofs(k);
    for (std::size_t i = 0; i < n; ++i) {
      const long fi = s.free_index(dofs[i]);
      if (fi < 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const long fj = s.free_index(dofs[j]);
        if (fj < 0) continue;
        triplets.emplace_back(static_cast<int>(fi), static_cast<int>(fj), local[i][j]);
      }
    }
  }
  SparseMatrix a(static_cast<Eigen::Index>(nf), static_cast<Eigen::Index>(nf));
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();

  const SparseMatrix sym = 0.5 * (a + SparseMatrix(a.transpose()));
  Eigen::SimplicialLLT<SparseMatrix> llt(sym);
  if (llt.info() != Eigen::Success) {
    fail(ErrorCode::coercivity_violation,
         "assembled " + to_string(form.kind) + " form is not coercive (symmetric part not positive definite)");
  }
  return a;
}

Eigen::VectorXd assemble_load(const FeSpace& s, const BilinearFormSpec& form, const FunctionSpec& u,
                              std::optional<int> exactness) {
  check_space_form(s, form);
  require(static_cast<bool>(u.value), "assemble_load: function has no value evaluator");
  require(u.dimension == s.dimension(), "assemble_load: dimension mismatch");
  if (form.order() == 1 && !u.has_gradient()) {
    fail(ErrorCode::invalid_argument, "assemble_load: " + to_string(form.kind) +
                                          " form needs the gradient of `" + u.name + "`");
  }
  const int degree = exactness.value_or(assembly_exactness(s.degree()));
  require(degree >= assembly_exactness(s.degree()),
          "assemble_load: quadrature exactness below 2 degree + 4");
  const Mesh& m = s.mesh();
  const double h = m.h();
  const QuadratureRule& q = quadrature_rule(s.dimension(), degree);

  Eigen::VectorXd b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.num_free()));
  ElementBasis basis;
  for (std::size_t k = 0; k < m.num_elements(); ++k) {
    const ElementGeometry g = m.geometry(k);
    basis.reinit(s, g, q);
    const auto dofs = s.element_dofs(k);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const Vec2& x = basis.x[iq];
      const FormCoefficients c = form_coefficients(form, x, h);
      const double uv = u.value(x);
      const Vec2 du = u.has_gradient() ? u.gradient(x) : Vec2{};
      for (std::size_t i = 0; i < basis.n; ++i) {
        const long fi = s.free_index(dofs[i]);
        if (fi < 0) continue;
        b[fi] += basis.jxw[iq] * integrand(c, uv, du, basis.phi[iq][i], basis.dphi[iq][i]);
      }
    }
  }
  return b;
}

double form_value(const BilinearFormSpec& form, const FeFunction& v, const FeFunction& w) {
  require(&v.space() == &w.space() || v.space().mesh_ptr() == w.space().mesh_ptr(),
          "form_value: functions live on different meshes");
  const FeSpace& s = w.space();
  const Mesh& m = s.mesh();
  const QuadratureRule& q = quadrature_rule(s.dimension(), assembly_exactness(s.degree()));
  double sum = 0.0;
  ElementBasis basis;
  for (std::size_t k = 0; k < m.num_elements(); ++k) {
    const ElementGeometry g = m.geometry(k);
    basis.reinit(s, g, q);
    const auto dofs = s.element_dofs(k);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      double vv = 0.0, wv = 0.0;
      Vec2 dv, dw;
      for (std::size_t i = 0; i < basis.n; ++i) {
        vv += v.coeffs()[dofs[i]] * basis.phi[iq][i];
        dv += v.coeffs()[dofs[i]] * basis.dphi[iq][i];
        wv += w.coeffs()[dofs[i]] * basis.phi[iq][i];
        dw += w.coeffs()[dofs[i]] * basis.dphi[iq][i];
      }
      sum += basis.jxw[iq] * integrand(form_coefficients(form, basis.x[iq], m.h()), vv, dv, wv, dw);
    }
  }
  return sum;
}

double form_value(const BilinearFormSpec& form, const FunctionSpec& u, const FeFunction& w) {
  const Eigen::VectorXd b = assemble_load(w.space(), form, u);
  const auto wf = w.free_values();
  return b.dot(Eigen::Map<const Eigen::VectorXd>(wf.data(), static_cast<Eigen::Index>(wf.size())));
}

}  // namespace superclose
