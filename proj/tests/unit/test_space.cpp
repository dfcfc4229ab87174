#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include "superclose/norms.hpp"
#include "superclose/space.hpp"

using namespace superclose;

namespace {

std::shared_ptr<const Mesh> interval(int n) {
  return std::make_shared<const Mesh>(build_uniform_interval(n));
}

std::shared_ptr<const FeSpace> space_on(std::shared_ptr<const Mesh> m, int degree) {
  return std::make_shared<const FeSpace>(std::move(m), degree, true);
}

}  // namespace

TEST_SUITE("space") {

TEST_CASE("dof counts") {
  auto s1 = space_on(interval(8), 1);
  CHECK(s1->num_dofs() == 9);
  CHECK(s1->num_free() == 7);
  auto s2 = space_on(interval(8), 2);
  CHECK(s2->num_dofs() == 17);
  CHECK(s2->num_free() == 15);
  auto sq = space_on(std::make_shared<const Mesh>(build_uniform_square(4)), 1);
  CHECK(sq->num_dofs() == 25);
  CHECK(sq->num_free() == 9);
  auto sq2 = space_on(std::make_shared<const Mesh>(build_uniform_square(4)), 2);
  CHECK(sq2->num_dofs() == 81);
  CHECK(sq2->num_free() == 49);
  CHECK(local_dof_count(2, 2) == 6);
  CHECK_THROWS_AS(FeSpace(interval(4), 3, true), Error);
}

TEST_CASE("constrained coefficients must vanish") {
  auto s = space_on(interval(4), 1);
  CHECK_THROWS_AS(FeFunction(s, {1.0, 0.0, 0.0, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(FeFunction(s, {0.0, 0.0}), Error);
}

TEST_CASE("shape functions form a partition of unity") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int degree : {1, 2}) {
    for (int trial = 0; trial < 20; ++trial) {
      double a = uni(rng), b = uni(rng) * (1.0 - a);
      const std::array<double, 3> lambda{a, b, 1.0 - a - b};
      std::array<double, kMaxLocalDofs> v{};
      shape_values(2, degree, lambda, v);
      double sum = 0.0;
      for (std::size_t i = 0; i < local_dof_count(2, degree); ++i) sum += v[i];
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("interpolant of x is reproduced with unit slope") {
  // x does not vanish at x = 1, so use a space without boundary conditions.
  auto s = std::make_shared<const FeSpace>(interval(8), 1, false);
  const FeFunction f = interpolate_nodal(s, functions::affine(1, 0.0, 1.0));
  for (double x : {0.03, 0.31, 0.5, 0.77, 0.999}) {
    const PointValue p = evaluate(f, {x, 0.0});
    CHECK(p.value == doctest::Approx(x).epsilon(1e-14));
    CHECK(p.gradient.x == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("hat function has value one at its node") {
  auto s = space_on(interval(8), 1);
  std::vector<double> c(s->num_dofs(), 0.0);
  c[3] = 1.0;
  const FeFunction hat(s, c);
  CHECK(evaluate(hat, {0.375, 0.0}).value == doctest::Approx(1.0));
  CHECK(evaluate(hat, {0.4375, 0.0}).value == doctest::Approx(0.5));
  CHECK(evaluate(hat, {0.6, 0.0}).value == 0.0);
  // Interpolating a member of V_h reproduces it.
  FunctionSpec u;
  u.name = "hat";
  u.value = [&](const Vec2& x) { return evaluate(hat, x).value; };
  CHECK(interpolate_nodal(s, u).coeffs() == hat.coeffs());
}

TEST_CASE("P2 reproduces quadratics in 2-D") {
  auto m = std::make_shared<const Mesh>(
      perturb_node_nearest(build_uniform_square(4), {0.5, 0.5}, {0.07, 0.0}));
  auto s = std::make_shared<const FeSpace>(m, 2, false);
  const FunctionSpec u = functions::quadratic(2);
  const FeFunction f = interpolate_nodal(s, u);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const Vec2 x{uni(rng), uni(rng)};
    const PointValue p = evaluate(f, x);
    const Vec2 g = u.gradient(x);
    CHECK(p.value == doctest::Approx(u.value(x)).epsilon(1e-12));
    CHECK(p.gradient.x == doctest::Approx(g.x).epsilon(1e-11));
    CHECK(p.gradient.y == doctest::Approx(g.y).epsilon(1e-11));
  }
}

TEST_CASE("point outside the domain") {
  auto s = space_on(interval(4), 1);
  try {
    (void)evaluate(FeFunction::zero(s), {1.5, 0.0});
    FAIL("expected out_of_domain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::out_of_domain);
  }
}

TEST_CASE("intersection projector on identical and perturbed pairs") {
  auto a = interval(8);
  auto b = std::make_shared<const Mesh>(perturb_node_nearest(*a, {0.25, 0.0}, {0.03125, 0.0}));
  const MeshPair same = classify_pair(a, a, kInfinity);
  auto sa = space_on(a, 1);
  std::vector<double> c(sa->num_dofs(), 0.0);
  for (std::size_t i = 1; i + 1 < c.size(); ++i) c[i] = std::sin(static_cast<double>(i));
  const FeFunction f(sa, c);
  CHECK(intersection_project(same, sa, sa, f).coeffs() == f.coeffs());

  const MeshPair pair = classify_pair(a, b, 1.0);
  auto sb = space_on(b, 1);
  const SharedDofMap map(pair, sa, sb);
  // Hats at nodes 1, 2, 3 touch a moved element and are dropped.
  CHECK(map.num_shared() == 6);
  for (std::size_t dof : {1, 2, 3}) CHECK(map.a_to_b(dof) == -1);
  CHECK(map.a_to_b(4) == 4);
  std::vector<double> hat(sa->num_dofs(), 0.0);
  hat[2] = 1.0;
  const FeFunction g = intersection_project(map, FeFunction(sa, hat));
  for (double v : g.coeffs()) CHECK(v == 0.0);

  const FeFunction pf = intersection_project(map, f);
  const FeFunction moved = transfer_shared(map, pf);
  CHECK(&moved.space() == sb.get());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(moved.coeffs()[i] == (i >= 1 && i <= 3 ? 0.0 : c[i]));
  }
}

TEST_CASE("pi_h stability constant does not grow under refinement") {
  for (double eta : {2.0, kInfinity}) {
    double prev = 0.0;
    for (int n : {8, 16, 32}) {
      auto a = interval(n);
      auto b = std::make_shared<const Mesh>(
          perturb_node_nearest(*a, {0.25, 0.0}, {0.25 / n, 0.0}));
      auto sa = space_on(a, 2);
      auto sb = space_on(b, 2);
      const SharedDofMap map(classify_pair(a, b, 1.0), sa, sb);
      // Worst ratio over the local shape functions near the moved node plus a smooth function.
      double c = 0.0;
      std::vector<FeFunction> fs{interpolate_nodal(sa, functions::sine_product(1))};
      const std::vector<int>& free = sa->free_dofs();
      for (std::size_t i = 0; i < free.size(); ++i) {
        std::vector<double> e(sa->num_dofs(), 0.0);
        e[free[i]] = 1.0;
        fs.emplace_back(sa, e);
        std::vector<double> w(sa->num_dofs(), 0.0);
        for (std::size_t k = 0; k <= i; ++k) w[free[k]] = k % 2 ? 1.0 : -1.0;
        fs.emplace_back(sa, w);
      }
      const NormSpec spec{0, eta, {}};
      for (const FeFunction& f : fs) {
        c = std::max(c, sobolev_norm(intersection_project(map, f), spec) / sobolev_norm(f, spec));
      }
      if (prev > 0.0) CHECK(c <= 1.1 * prev);
      prev = c;
    }
  }
}

TEST_CASE("function text round trip") {
  auto s = space_on(interval(8), 2);
  const FeFunction f = interpolate_nodal(s, functions::sine_product(1));
  std::stringstream io;
  write_function(io, f);
  CHECK(read_coefficients(io) == f.coeffs());
}

}  // TEST_SUITE
