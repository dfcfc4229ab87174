#include "superclose/norms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "format.hpp"
#include "superclose/clipping.hpp"
#include "superclose/quadrature.hpp"

namespace superclose {

void NormSpec::validate() const {
  require(s == 0 || s == 1, "norm order s must be 0 or 1");
  require(eta >= 2.0, "norm integrability eta must be >= 2");
}

std::string NormSpec::label() const {
  if (eta == 2.0) return s == 0 ? "L2" : "H1";
  return "W^{" + std::to_string(s) + "," + (std::isinf(eta) ? std::string("inf") : fmt_double(eta)) + "}";
}

namespace {

/// Reference sample points for sampled suprema.
const std::vector<Vec2>& sup_samples(int dim) {
  static const std::vector<Vec2> pts1 = [] {
    std::vector<Vec2> p;
    for (int i = 0; i < kSupSamples1d; ++i) p.push_back(Vec2{i / double(kSupSamples1d - 1), 0.0});
    return p;
  }();
  static const std::vector<Vec2> pts2 = [] {
    constexpr int m = 8;  // (m+1)(m+2)/2 = 45
    std::vector<Vec2> p;
    for (int j = 0; j <= m; ++j)
      for (int i = 0; i + j <= m; ++i) p.push_back(Vec2{double(i) / m, double(j) / m});
    return p;
  }();
  return dim == 1 ? pts1 : pts2;
}

/// Accumulates per-component integrals of |.|^eta (or maxima).
class ComponentAccumulator {
 public:
  ComponentAccumulator(int s, int dim, double eta)
      : count_(s == 0 ? 1 : 1 + static_cast<std::size_t>(dim)), eta_(eta) {}

  void add(double weight, double v, const Vec2& g) {
    const std::array<double, 3> c{v, g.x, g.y};
    for (std::size_t i = 0; i < count_; ++i) {
      const double a = std::abs(c[i]);
      if (std::isinf(eta_)) {
        acc_[i] = std::max(acc_[i], a);
      } else if (eta_ == 2.0) {
        acc_[i] += weight * a * a;
      } else {
        acc_[i] += weight * std::pow(a, eta_);
      }
    }
  }

  std::vector<double> component_norms() const {
    std::vector<double> out(count_);
    for (std::size_t i = 0; i < count_; ++i) {
      out[i] = std::isinf(eta_) ? acc_[i] : std::pow(acc_[i], 1.0 / eta_);
    }
    return out;
  }

  double combined() const {
    if (std::isinf(eta_)) return *std::max_element(acc_.begin(), acc_.begin() + count_);
    double sum = 0.0;
    for (std::size_t i = 0; i < count_; ++i) sum += acc_[i];
    return std::pow(sum, 1.0 / eta_);
  }

 private:
  std::size_t count_;
  double eta_;
  std::array<double, 3> acc_{};
};

ComponentAccumulator accumulate_diff(const FeFunction& f, const FunctionSpec* u, const NormSpec& spec) {
  spec.validate();
  const FeSpace& s = f.space();
  const Mesh& m = s.mesh();
  if (u) {
    require(static_cast<bool>(u->value), "norm: function has no value evaluator");
    require(u->dimension == s.dimension(), "norm: dimension mismatch");
    if (spec.s == 1 && !u->has_gradient()) {
      fail(ErrorCode::invalid_argument, "norm: H1-type norm needs the gradient of `" + u->name + "`");
    }
  }
  const bool sup = std::isinf(spec.eta);
  const int dim = s.dimension();
  const QuadratureRule* q = sup ? nullptr : &quadrature_rule(dim, 2 * s.degree() + 6);
  const std::vector<Vec2>& ref_pts = sup ? sup_samples(dim) : q->points;
  const double ref_measure = dim == 1 ? 1.0 : 0.5;

  ComponentAccumulator acc(spec.s, dim, spec.eta);
  auto visit = [&](std::size_t k) {
    require(k < m.num_elements(), "norm: region element index out of range");
    const ElementGeometry g = m.geometry(k);
    for (std::size_t iq = 0; iq < ref_pts.size(); ++iq) {
      const Vec2 x = g.map(ref_pts[iq]);
      PointValue pv = f.on_element(k, g, x);
      if (u) {
        pv.value -= u->value(x);
        if (spec.s == 1) pv.gradient -= u->gradient(x);
      }
      const double w = sup ? 0.0 : q->weights[iq] * g.measure / ref_measure;
      acc.add(w, pv.value, pv.gradient);
    }
  };
  if (spec.region) {
    for (std::size_t k : *spec.region) visit(k);
  } else {
    for (std::size_t k = 0; k < m.num_elements(); ++k) visit(k);
  }
  return acc;
}

}  // namespace

double sobolev_norm_exact_diff(const FeFunction& f, const FunctionSpec& u, const NormSpec& spec) {
  return accumulate_diff(f, &u, spec).combined();
}

double sobolev_norm(const FeFunction& f, const NormSpec& spec) {
  return accumulate_diff(f, nullptr, spec).combined();
}

std::vector<double> component_norms(const FeFunction& f, int s, double eta) {
  return accumulate_diff(f, nullptr, NormSpec{s, eta, {}}).component_norms();
}

// ---------------------------------------------------------------------------
// Cross-mesh norms

namespace {

struct Box {
  double x0, x1, y0, y1;
};

Box bounding_box(const ElementGeometry& g) {
  Box b{kInfinity, -kInfinity, kInfinity, -kInfinity};
  for (int i = 0; i < g.num_vertices(); ++i) {
    b.x0 = std::min(b.x0, g.vertices[i].x);
    b.x1 = std::max(b.x1, g.vertices[i].x);
    b.y0 = std::min(b.y0, g.vertices[i].y);
    b.y1 = std::max(b.y1, g.vertices[i].y);
  }
  return b;
}

bool boxes_overlap(const Box& a, const Box& b, int dim) {
  const bool ox = a.x0 < b.x1 && b.x0 < a.x1;
  return dim == 1 ? ox : ox && a.y0 < b.y1 && b.y0 < a.y1;
}

double squared_integrand(const PointValue& a, const PointValue& b, int s) {
  const double dv = a.value - b.value;
  double r = dv * dv;
  if (s == 1) {
    const Vec2 dg = a.gradient - b.gradient;
    r += dot(dg, dg);
  }
  return r;
}

}  // namespace

CrossMeshResult cross_mesh_norm_detailed(const CrossMeshDiff& d, const NormSpec& spec) {
  spec.validate();
  require(spec.eta == 2.0, "cross_mesh_norm: only eta = 2 is supported");
  require(!spec.region, "cross_mesh_norm: region restriction is not supported");
  const FeSpace& sa = d.f_a.space();
  const FeSpace& sb = d.f_b.space();
  if (sa.degree() != sb.degree()) {
    fail(ErrorCode::invalid_argument, "cross_mesh_norm: spaces have different degrees");
  }
  require(sa.mesh_ptr() == d.pair.mesh_a_ptr() && sb.mesh_ptr() == d.pair.mesh_b_ptr(),
          "cross_mesh_norm: functions are not defined on the pair's meshes");
  const Mesh& ma = sa.mesh();
  const Mesh& mb = sb.mesh();
  const int dim = ma.dimension();
  const QuadratureRule& q = quadrature_rule(dim, 2 * sa.degree());
  const double ref_measure = dim == 1 ? 1.0 : 0.5;

  CrossMeshResult res;

  for (const auto& [ka, kb] : d.pair.shared_elements()) {
    const ElementGeometry ga = ma.geometry(ka);
    const ElementGeometry gb = mb.geometry(kb);
    double local = 0.0;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const Vec2 x = ga.map(q.points[iq]);
      local += q.weights[iq] *
               squared_integrand(d.f_a.on_element(ka, ga, x), d.f_b.on_element(kb, gb, x), spec.s);
    }
    res.shared_part += local * ga.measure / ref_measure;
  }

  std::vector<std::size_t> diff_b;
  std::vector<Box> boxes_b;
  for (std::size_t kb = 0; kb < mb.num_elements(); ++kb) {
    if (d.pair.partner_in_a(kb) < 0) {
      diff_b.push_back(kb);
      boxes_b.push_back(bounding_box(mb.geometry(kb)));
    }
  }

  auto integrate_fragment = [&](std::size_t ka, const ElementGeometry& ga, std::size_t kb,
                                const ElementGeometry& gb, const ElementGeometry& frag) {
    double local = 0.0;
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const Vec2 x = frag.map(q.points[iq]);
      local += q.weights[iq] *
               squared_integrand(d.f_a.on_element(ka, ga, x), d.f_b.on_element(kb, gb, x), spec.s);
    }
    res.differing_part += local * frag.measure / ref_measure;
    res.fragment_measure += frag.measure;
    ++res.fragments;
  };

  for (std::size_t ka = 0; ka < ma.num_elements(); ++ka) {
    if (d.pair.partner_in_b(ka) >= 0) continue;
    const ElementGeometry ga = ma.geometry(ka);
    const Box box_a = bounding_box(ga);
    for (std::size_t i = 0; i < diff_b.size(); ++i) {
      if (!boxes_overlap(box_a, boxes_b[i], dim)) continue;
      const std::size_t kb = diff_b[i];
      const ElementGeometry gb = mb.geometry(kb);
      if (dim == 1) {
        const double lo = std::max(ga.vertices[0].x, gb.vertices[0].x);
        const double hi = std::min(ga.vertices[1].x, gb.vertices[1].x);
        if (hi - lo <= kVertexMergeTolerance) continue;
        ElementGeometry frag;
        frag.dimension = 1;
        frag.vertices[0] = Vec2{lo, 0.0};
        frag.vertices[1] = Vec2{hi, 0.0};
        frag.measure = hi - lo;
        integrate_fragment(ka, ga, kb, gb, frag);
        continue;
      }
      const Polygon poly = clip_convex({ga.vertices[0], ga.vertices[1], ga.vertices[2]},
                                       {gb.vertices[0], gb.vertices[1], gb.vertices[2]});
      for (const Triangle& t : fan_triangulate(poly)) {
        ElementGeometry frag;
        frag.dimension = 2;
        frag.vertices = t;
        frag.measure = 0.5 * cross(t[1] - t[0], t[2] - t[0]);
        if (frag.measure <= 0.0) continue;
        integrate_fragment(ka, ga, kb, gb, frag);
      }
    }
  }

  const double expected = d.pair.differing_region_measure();
  if (std::abs(res.fragment_measure - expected) > 1e-10) {
    fail(ErrorCode::geometry_failure,
         "cross_mesh_norm: clipped fragments cover " + fmt_double(res.fragment_measure) +
             " but the differing region measures " + fmt_double(expected));
  }
  res.value = std::sqrt(res.shared_part + res.differing_part);
  return res;
}

double cross_mesh_norm(const CrossMeshDiff& d, const NormSpec& spec) {
  return cross_mesh_norm_detailed(d, spec).value;
}

// ---------------------------------------------------------------------------
// Seminorms of exact functions

namespace {

std::vector<double> derivative_components(const FunctionSpec& u, int k, const Vec2& x) {
  if (auto it = u.derivatives.find(k); it != u.derivatives.end()) return it->second(x);
  if (k == 0) return {u.value(x)};
  const Vec2 g = u.gradient(x);
  if (u.dimension == 1) return {g.x};
  return {g.x, g.y};
}

bool has_derivative(const FunctionSpec& u, int k) {
  if (u.derivatives.count(k)) return true;
  if (k == 0) return static_cast<bool>(u.value);
  return k == 1 && u.has_gradient();
}

}  // namespace

SeminormValue seminorm_exact(const FunctionSpec& u, int k, double eta) {
  require(k >= 0, "seminorm order must be >= 0");
  require(eta >= 1.0, "seminorm integrability must be >= 1");
  if (auto it = u.seminorms.find({k, eta}); it != u.seminorms.end()) return {it->second, false};
  if (!has_derivative(u, k)) {
    fail(ErrorCode::invalid_argument, "seminorm: derivatives of order " + std::to_string(k) +
                                          " of `" + u.name + "` are unavailable");
  }
  SeminormValue out{0.0, true};
  if (std::isinf(eta)) {
    if (u.dimension == 1) {
      constexpr int n = 20000;
      for (int i = 0; i <= n; ++i) {
        for (double c : derivative_components(u, k, Vec2{double(i) / n, 0.0})) {
          out.value = std::max(out.value, std::abs(c));
        }
      }
    } else {
      constexpr int n = 400;
      for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i)
          for (double c : derivative_components(u, k, Vec2{double(i) / n, double(j) / n}))
            out.value = std::max(out.value, std::abs(c));
    }
    return out;
  }
  const Mesh m = u.dimension == 1 ? build_uniform_interval(2048) : build_uniform_square(128);
  const QuadratureRule& q = quadrature_rule(u.dimension, 10);
  const double ref_measure = u.dimension == 1 ? 1.0 : 0.5;
  double sum = 0.0;
  for (std::size_t e = 0; e < m.num_elements(); ++e) {
    const ElementGeometry g = m.geometry(e);
    for (std::size_t iq = 0; iq < q.size(); ++iq) {
      const double w = q.weights[iq] * g.measure / ref_measure;
      for (double c : derivative_components(u, k, g.map(q.points[iq]))) sum += w * std::pow(std::abs(c), eta);
    }
  }
  out.value = std::pow(sum, 1.0 / eta);
  return out;
}

// ---------------------------------------------------------------------------

double support_measure(const FeFunction& f, double threshold) {
  require(threshold >= 0.0, "support_measure: threshold must be >= 0");
  const FeSpace& s = f.space();
  const Mesh& m = s.mesh();
  const QuadratureRule& q = quadrature_rule(s.dimension(), 2 * s.degree() + 4);
  double total = 0.0;
  for (std::size_t k = 0; k < m.num_elements(); ++k) {
    bool active = false;
    for (int d : s.element_dofs(k)) active = active || std::abs(f.coeffs()[d]) > threshold;
    if (!active) {
      const ElementGeometry g = m.geometry(k);
      for (std::size_t iq = 0; iq < q.size() && !active; ++iq) {
        active = std::abs(f.on_element(k, g, g.map(q.points[iq])).value) > threshold;
      }
    }
    if (active) total += m.element_measure(k);
  }
  return total;
}

}  // namespace superclose
