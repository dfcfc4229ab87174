#include "superclose/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "format.hpp"

namespace superclose {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

}  // namespace

// ---------------------------------------------------------------------------
// ElementGeometry

Vec2 ElementGeometry::map(const Vec2& reference) const noexcept {
  if (dimension == 1) return vertices[0] + reference.x * (vertices[1] - vertices[0]);
  return vertices[0] + reference.x * (vertices[1] - vertices[0]) +
         reference.y * (vertices[2] - vertices[0]);
}

std::array<double, 3> ElementGeometry::barycentric(const Vec2& x) const noexcept {
  if (dimension == 1) {
    const double t = (x.x - vertices[0].x) / (vertices[1].x - vertices[0].x);
    return {1.0 - t, t, 0.0};
  }
  const Vec2 e1 = vertices[1] - vertices[0];
  const Vec2 e2 = vertices[2] - vertices[0];
  const Vec2 d = x - vertices[0];
  const double det = cross(e1, e2);
  const double l1 = cross(d, e2) / det;
  const double l2 = cross(e1, d) / det;
  return {1.0 - l1 - l2, l1, l2};
}

bool ElementGeometry::contains(const Vec2& x, double tolerance) const noexcept {
  const auto lambda = barycentric(x);
  for (int i = 0; i < num_vertices(); ++i) {
    if (lambda[i] < -tolerance) return false;
  }
  return true;
}

double ElementGeometry::diameter() const noexcept {
  if (dimension == 1) return std::abs(vertices[1].x - vertices[0].x);
  return std::max({norm(vertices[1] - vertices[0]), norm(vertices[2] - vertices[1]),
                   norm(vertices[0] - vertices[2])});
}

double ElementGeometry::inradius() const noexcept {
  if (dimension == 1) return 0.5 * measure;
  const double perimeter = norm(vertices[1] - vertices[0]) + norm(vertices[2] - vertices[1]) +
                           norm(vertices[0] - vertices[2]);
  return 2.0 * measure / perimeter;
}

// ---------------------------------------------------------------------------
// Mesh

bool on_domain_boundary(const Vec2& x, int dimension) noexcept {
  return distance_to_boundary(x, dimension) <= kBoundaryTolerance;
}

double distance_to_boundary(const Vec2& x, int dimension) noexcept {
  double d = std::min(x.x, 1.0 - x.x);
  if (dimension == 2) d = std::min({d, x.y, 1.0 - x.y});
  return std::max(d, 0.0);
}

Mesh::Mesh(int dimension, std::vector<Vec2> nodes, std::vector<int> connectivity)
    : dimension_(dimension), nodes_(std::move(nodes)), connectivity_(std::move(connectivity)) {
  require(dimension_ == 1 || dimension_ == 2, "mesh dimension must be 1 or 2");
  const std::size_t nv = vertices_per_element();
  require(!connectivity_.empty() && connectivity_.size() % nv == 0,
          "connectivity size must be a positive multiple of dimension+1");
  for (int idx : connectivity_) {
    require(idx >= 0 && static_cast<std::size_t>(idx) < nodes_.size(),
            "element references node " + std::to_string(idx) + " out of range");
  }

  const std::size_t ne = num_elements();
  measures_.resize(ne);
  for (std::size_t k = 0; k < ne; ++k) {
    const ElementGeometry g = geometry(k);
    if (!(g.measure > 0.0)) {
      fail(ErrorCode::degenerate_mesh,
           "element " + std::to_string(k) + " has non-positive measure " + fmt_double(g.measure));
    }
    measures_[k] = g.measure;
    h_ = std::max(h_, g.diameter());
  }

  on_boundary_.assign(nodes_.size(), false);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (on_domain_boundary(nodes_[i], dimension_)) {
      on_boundary_[i] = true;
      boundary_nodes_.push_back(static_cast<int>(i));
    }
  }
}

std::span<const int> Mesh::element(std::size_t k) const {
  const std::size_t nv = vertices_per_element();
  require(k < num_elements(), "element index out of range");
  return std::span<const int>(connectivity_).subspan(k * nv, nv);
}

double Mesh::total_measure() const noexcept {
  double sum = 0.0;
  for (double m : measures_) sum += m;
  return sum;
}

ElementGeometry Mesh::geometry(std::size_t k) const {
  ElementGeometry g;
  g.dimension = dimension_;
  const auto idx = element(k);
  for (std::size_t i = 0; i < idx.size(); ++i) g.vertices[i] = nodes_[idx[i]];
  if (dimension_ == 1) {
    const double len = g.vertices[1].x - g.vertices[0].x;
    g.measure = len;
    g.barycentric_gradients = {Vec2{-1.0 / len, 0.0}, Vec2{1.0 / len, 0.0}, Vec2{}};
  } else {
    const Vec2 e1 = g.vertices[1] - g.vertices[0];
    const Vec2 e2 = g.vertices[2] - g.vertices[0];
    const double det = cross(e1, e2);
    g.measure = 0.5 * det;
    const Vec2 g1{e2.y / det, -e2.x / det};
    const Vec2 g2{-e1.y / det, e1.x / det};
    g.barycentric_gradients = {Vec2{} - g1 - g2, g1, g2};
  }
  return g;
}

double Mesh::max_shape_ratio() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < num_elements(); ++k) {
    const ElementGeometry g = geometry(k);
    worst = std::max(worst, g.diameter() / g.inradius());
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Builders

Mesh build_uniform_interval(int n) {
  require(n >= 2, "build_uniform_interval: n must be >= 2");
  std::vector<Vec2> nodes(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) nodes[i] = Vec2{static_cast<double>(i) / n, 0.0};
  std::vector<int> conn;
  conn.reserve(2 * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    conn.push_back(i);
    conn.push_back(i + 1);
  }
  return Mesh(1, std::move(nodes), std::move(conn));
}

Mesh build_uniform_square(int n) {
  require(n >= 2, "build_uniform_square: n must be >= 2");
  const int stride = n + 1;
  std::vector<Vec2> nodes;
  nodes.reserve(static_cast<std::size_t>(stride) * stride);
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      nodes.push_back(Vec2{static_cast<double>(i) / n, static_cast<double>(j) / n});
    }
  }
  std::vector<int> conn;
  conn.reserve(6 * static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int bl = j * stride + i;
      const int br = bl + 1;
      const int tl = bl + stride;
      const int tr = tl + 1;
      // Diagonal from bottom-left to top-right.
      conn.insert(conn.end(), {bl, br, tr});
      conn.insert(conn.end(), {bl, tr, tl});
    }
  }
  return Mesh(2, std::move(nodes), std::move(conn));
}

Mesh perturb_node_nearest(const Mesh& m, const Vec2& point, const Vec2& displacement) {
  if (m.dimension() == 1) require(displacement.y == 0.0, "1-D displacement must have y = 0");
  std::size_t best = 0;
  double best_dist = kInfinity;
  for (std::size_t i = 0; i < m.num_nodes(); ++i) {
    const double d = norm(m.node(i) - point);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  require(!m.is_boundary_node(best),
          "perturb_node_nearest: node nearest to the point lies on the boundary");
  std::vector<Vec2> nodes = m.nodes();
  nodes[best] += displacement;
  return Mesh(m.dimension(), std::move(nodes), m.connectivity());
}

Mesh perturb_boundary_band(const Mesh& m, double band_distance, const Vec2& displacement) {
  require(m.dimension() == 2, "perturb_boundary_band requires a 2-D mesh");
  std::vector<Vec2> nodes = m.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (m.is_boundary_node(i)) continue;
    if (std::abs(distance_to_boundary(nodes[i], 2) - band_distance) <= 1e-12) {
      nodes[i] += displacement;
    }
  }
  return Mesh(2, std::move(nodes), m.connectivity());
}

// ---------------------------------------------------------------------------
// Pair classification

namespace {

bool same_point(const Vec2& a, const Vec2& b) noexcept {
  return std::abs(a.x - b.x) <= kCoordinateTolerance && std::abs(a.y - b.y) <= kCoordinateTolerance;
}

bool same_element(const ElementGeometry& a, const ElementGeometry& b) noexcept {
  for (int i = 0; i < a.num_vertices(); ++i) {
    bool found = false;
    for (int j = 0; j < b.num_vertices() && !found; ++j) found = same_point(a.vertices[i], b.vertices[j]);
    if (!found) return false;
  }
  return true;
}

Vec2 centroid(const ElementGeometry& g) noexcept {
  Vec2 c;
  for (int i = 0; i < g.num_vertices(); ++i) c += g.vertices[i];
  return c * (1.0 / g.num_vertices());
}

/// Uniform bucket grid over element centroids of one mesh.
class CentroidGrid {
 public:
  explicit CentroidGrid(const Mesh& m) : mesh_(m) {
    cells_ = std::max<long>(1, static_cast<long>(std::ceil(1.0 / m.h())));
    for (std::size_t k = 0; k < m.num_elements(); ++k) {
      buckets_[key(centroid(m.geometry(k)))].push_back(k);
    }
  }

  template <class Visit>
  void visit_near(const Vec2& x, Visit&& visit) const {
    const long ci = cell(x.x);
    const long cj = mesh_.dimension() == 2 ? cell(x.y) : 0;
    const long span_j = mesh_.dimension() == 2 ? 1 : 0;
    for (long dj = -span_j; dj <= span_j; ++dj) {
      for (long di = -1; di <= 1; ++di) {
        auto it = buckets_.find(pack(ci + di, cj + dj));
        if (it == buckets_.end()) continue;
        for (std::size_t k : it->second) {
          if (visit(k)) return;
        }
      }
    }
  }

 private:
  long cell(double v) const noexcept {
    return std::clamp(static_cast<long>(std::floor(v * cells_)), -1L, cells_ + 1);
  }
  static long long pack(long i, long j) noexcept {
    return (static_cast<long long>(i) + 4) * 1000003LL + (j + 4);
  }
  long long key(const Vec2& x) const noexcept {
    return pack(cell(x.x), mesh_.dimension() == 2 ? cell(x.y) : 0);
  }

  const Mesh& mesh_;
  long cells_ = 1;
  std::unordered_map<long long, std::vector<std::size_t>> buckets_;
};

}  // namespace

MeshPair classify_pair(std::shared_ptr<const Mesh> a, std::shared_ptr<const Mesh> b,
                       double gamma_nominal) {
  require(a && b, "classify_pair: null mesh");
  require(a->dimension() == b->dimension(), "classify_pair: meshes have different dimensions");
  require(std::abs(a->total_measure() - b->total_measure()) <= 1e-12,
          "classify_pair: meshes do not cover the same domain");
  require(gamma_nominal >= 0.0, "classify_pair: gamma must be >= 0");

  MeshPair pair;
  pair.gamma_nominal_ = gamma_nominal;
  pair.a_to_b_.assign(a->num_elements(), -1);
  pair.b_to_a_.assign(b->num_elements(), -1);

  const CentroidGrid grid(*b);
  for (std::size_t ka = 0; ka < a->num_elements(); ++ka) {
    const ElementGeometry ga = a->geometry(ka);
    grid.visit_near(centroid(ga), [&](std::size_t kb) {
      if (pair.b_to_a_[kb] >= 0) return false;
      if (!same_element(ga, b->geometry(kb))) return false;
      pair.a_to_b_[ka] = static_cast<long>(kb);
      pair.b_to_a_[kb] = static_cast<long>(ka);
      pair.shared_.emplace_back(ka, kb);
      return true;
    });
  }

  for (std::size_t ka = 0; ka < a->num_elements(); ++ka) {
    if (pair.a_to_b_[ka] < 0) pair.differing_measure_ += a->element_measure(ka);
  }
  for (std::size_t kb = 0; kb < b->num_elements(); ++kb) {
    if (pair.b_to_a_[kb] < 0) pair.differing_measure_b_ += b->element_measure(kb);
  }
  pair.a_ = std::move(a);
  pair.b_ = std::move(b);
  return pair;
}

// ---------------------------------------------------------------------------
// Text I/O

void write_mesh(std::ostream& out, const Mesh& m) {
  out << m.dimension() << ' ' << m.num_nodes() << ' ' << m.num_elements() << '\n';
  for (const Vec2& p : m.nodes()) {
    out << fmt_double(p.x);
    if (m.dimension() == 2) out << ' ' << fmt_double(p.y);
    out << '\n';
  }
  for (std::size_t k = 0; k < m.num_elements(); ++k) {
    const auto e = m.element(k);
    for (std::size_t i = 0; i < e.size(); ++i) out << (i ? " " : "") << e[i];
    out << '\n';
  }
  const auto& bnd = m.boundary_nodes();
  for (std::size_t i = 0; i < bnd.size(); ++i) out << (i ? " " : "") << bnd[i];
  out << '\n';
}

Mesh read_mesh(std::istream& in) {
  int dim = 0;
  std::size_t nn = 0;
  std::size_t ne = 0;
  if (!(in >> dim >> nn >> ne) || (dim != 1 && dim != 2)) {
    fail(ErrorCode::parse_error, "mesh header must be `dim n_nodes n_elements`");
  }
  std::vector<Vec2> nodes(nn);
  for (auto& p : nodes) {
    if (!(in >> p.x) || (dim == 2 && !(in >> p.y))) fail(ErrorCode::parse_error, "truncated node list");
  }
  std::vector<int> conn(ne * (static_cast<std::size_t>(dim) + 1));
  for (int& idx : conn) {
    if (!(in >> idx)) fail(ErrorCode::parse_error, "truncated element list");
  }
  // Boundary nodes are recomputed from geometry; the trailing line is informational.
  return Mesh(dim, std::move(nodes), std::move(conn));
}

}  // namespace superclose
