#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>

#include "superclose/forms.hpp"
#include "superclose/quadrature.hpp"

using namespace superclose;

namespace {

double integrate_interval(const QuadratureRule& q, int p) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * std::pow(q.points[i].x, p);
  return s;
}

double integrate_triangle(const QuadratureRule& q, int a, int b) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    s += q.weights[i] * std::pow(q.points[i].x, a) * std::pow(q.points[i].y, b);
  }
  return s;
}

// int_T x^a y^b over the unit right triangle = a! b! / (a + b + 2)!
double triangle_moment(int a, int b) {
  return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("interval rules integrate monomials exactly") {
  for (int e = 0; e <= 20; ++e) {
    const QuadratureRule& q = quadrature_rule(1, e);
    CHECK(q.exactness_degree >= e);
    for (double w : q.weights) CHECK(w > 0.0);
    for (int p = 0; p <= e; ++p) {
      CHECK(integrate_interval(q, p) == doctest::Approx(1.0 / (p + 1)).epsilon(1e-14));
    }
  }
  CHECK(integrate_interval(quadrature_rule(1, 1), 1) == 0.5);
  CHECK_THROWS_AS(quadrature_rule(1, 21), Error);
}

TEST_CASE("triangle rules integrate monomials exactly") {
  for (int e = 0; e <= 14; ++e) {
    const QuadratureRule& q = quadrature_rule(2, e);
    for (double w : q.weights) CHECK(w > 0.0);
    for (int a = 0; a <= e; ++a) {
      for (int b = 0; a + b <= e; ++b) {
        CHECK(integrate_triangle(q, a, b) == doctest::Approx(triangle_moment(a, b)).epsilon(1e-13));
      }
    }
  }
  CHECK_THROWS_AS(quadrature_rule(2, 15), Error);
}

TEST_CASE("test function gradients match finite differences") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(0.05, 0.95);
  const double step = 1e-6;
  for (const FunctionSpec& u :
       {functions::sine_product(1), functions::sine_product(2), functions::quadratic(2),
        functions::power_counterexample(4.0)}) {
    for (int i = 0; i < 100; ++i) {
      const Vec2 x{uni(rng), u.dimension == 2 ? uni(rng) : 0.0};
      const Vec2 g = u.gradient(x);
      const double dx = (u.value({x.x + step, x.y}) - u.value({x.x - step, x.y})) / (2 * step);
      CHECK(g.x == doctest::Approx(dx).epsilon(1e-5).scale(1.0));
      if (u.dimension == 2) {
        const double dy = (u.value({x.x, x.y + step}) - u.value({x.x, x.y - step})) / (2 * step);
        CHECK(g.y == doctest::Approx(dy).epsilon(1e-5).scale(1.0));
      }
    }
  }
}

TEST_CASE("stiffness on two intervals is the single entry 4") {
  auto s = std::make_shared<const FeSpace>(
      std::make_shared<const Mesh>(build_uniform_interval(2)), 1, true);
  const SparseMatrix a = assemble_matrix(*s, BilinearFormSpec::stiffness());
  REQUIRE(a.rows() == 1);
  CHECK(a.coeff(0, 0) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("1-D P1 mass matrix") {
  auto s = std::make_shared<const FeSpace>(
      std::make_shared<const Mesh>(build_uniform_interval(4)), 1, true);
  const SparseMatrix m = assemble_matrix(*s, BilinearFormSpec::mass());
  const double h = 0.25;
  CHECK(m.coeff(0, 0) == doctest::Approx(2 * h / 3));
  CHECK(m.coeff(0, 1) == doctest::Approx(h / 6));
  CHECK(m.coeff(0, 2) == 0.0);
}

TEST_CASE("2-D stiffness rows of interior P1 nodes sum to zero without constraints") {
  auto s = std::make_shared<const FeSpace>(
      std::make_shared<const Mesh>(build_uniform_square(4)), 1, false);
  const SparseMatrix a = assemble_matrix(*s, BilinearFormSpec::stiffness());
  for (int i = 0; i < a.rows(); ++i) {
    double sum = 0.0;
    for (int j = 0; j < a.cols(); ++j) sum += a.coeff(i, j);
    CHECK(std::abs(sum) < 1e-13);
  }
  // 5-point stencil on the BL-TR split: diagonal 4, axis neighbours -1.
  CHECK(a.coeff(6, 6) == doctest::Approx(4.0));
  CHECK(a.coeff(6, 7) == doctest::Approx(-1.0));
  CHECK(std::abs(a.coeff(6, 12)) < 1e-14);
}

TEST_CASE("zero function gives a zero load") {
  auto s = std::make_shared<const FeSpace>(
      std::make_shared<const Mesh>(build_uniform_square(3)), 2, true);
  const Eigen::VectorXd b =
      assemble_load(*s, BilinearFormSpec::stiffness(), functions::zero(2));
  CHECK(b.size() == static_cast<Eigen::Index>(s->num_free()));
  CHECK(b.norm() == 0.0);
}

TEST_CASE("form orders and symmetry") {
  CHECK(BilinearFormSpec::mass().order() == 0);
  CHECK(BilinearFormSpec::stiffness().order() == 1);
  CHECK(BilinearFormSpec::mass().symmetric());
  const auto adr = BilinearFormSpec::adr(1.0, [](const Vec2&) { return Vec2{1.0, 0.0}; });
  CHECK(adr.order() == 1);
  CHECK_FALSE(adr.symmetric());
  const auto pert = BilinearFormSpec::perturbed(BilinearFormSpec::stiffness(), Delta::finite(1.0),
                                                BilinearFormSpec::mass());
  CHECK(pert.order() == 1);
  CHECK(pert.symmetric());
  const FormCoefficients c = form_coefficients(pert, {0.5, 0.0}, 0.25);
  CHECK(c.stiffness == 1.0);
  CHECK(c.mass == doctest::Approx(0.25));
}

TEST_CASE("non-coercive form is rejected") {
  CHECK_THROWS_AS(BilinearFormSpec::adr(-1.0, {}), Error);
  // Built by hand to bypass the factory check: -grad.grad is negative definite.
  BilinearFormSpec bad;
  bad.kind = FormKind::adr;
  bad.kappa = -1000.0;
  auto s = std::make_shared<const FeSpace>(
      std::make_shared<const Mesh>(build_uniform_interval(8)), 1, true);
  try {
    (void)assemble_matrix(*s, bad);
    FAIL("expected coercivity_violation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::coercivity_violation);
  }
}

}  // TEST_SUITE
