#include <doctest.h>

#include <cmath>
#include <vector>

#include "superclose/theory.hpp"

using namespace superclose;

namespace {

RateInputs inputs(double gamma, int s, int r = 2) {
  RateInputs in;
  in.gamma = gamma;
  in.s = s;
  in.r = r;
  return in;
}

}  // namespace

TEST_SUITE("theory") {

TEST_CASE("sigma for identical forms") {
  CHECK(predicted_sigma(inputs(1.0, 0)) == 0.5);
  CHECK(predicted_order(inputs(1.0, 0), 0) == 2.5);
  CHECK(predicted_sigma(inputs(2.0, 0)) == 1.0);
  CHECK(predicted_order(inputs(2.0, 0), 0) == 3.0);
  CHECK(predicted_sigma(inputs(0.0, 0)) == 0.0);
}

TEST_CASE("eta = 2 removes the mesh gain") {
  RateInputs in = inputs(1e9, 1);
  in.eta = 2.0;
  CHECK(predicted_sigma(in) == 0.0);
  in.eta = 4.0;
  in.gamma = 1.0;
  CHECK(predicted_sigma(in) == 0.25);
}

TEST_CASE("sigma prime under an H1-type form") {
  const RateInputs g1 = inputs(1.0, 1);
  CHECK(predicted_sigma_prime(g1) == 0.5);
  CHECK(predicted_order(g1, 1) == 1.5);
  CHECK(predicted_order(g1, 0) == 2.5);
  const RateInputs g2 = inputs(2.0, 1);
  CHECK(predicted_order(g2, 1) == 2.0);
  CHECK(predicted_order(g2, 0) == 3.0);

  RateInputs d = inputs(1e6, 1);
  d.delta = Delta::finite(1.0);
  d.mu = 1;
  CHECK(predicted_sigma_prime(d) == 0.0);
  CHECK_THROWS_AS(predicted_sigma_prime(inputs(1.0, 0)), Error);
}

TEST_CASE("form perturbation term") {
  for (double delta : {0.0, 1.0, 2.0}) {
    RateInputs in = inputs(kInfinity, 1);
    in.delta = Delta::finite(delta);
    CHECK(predicted_sigma(in) == doctest::Approx((delta + 2.0) / 2.0));
    CHECK(predicted_sigma_prime(in) == doctest::Approx(std::min((delta + 2.0) / 2.0, delta)));
  }
}

TEST_CASE("invalid inputs list every violation") {
  RateInputs in = inputs(-1.0, 1);
  in.eta = 1.0;
  in.mu = 3;
  CHECK(in.violations().size() == 3);
  try {
    in.validate();
    FAIL("expected invalid_argument");
  } catch (const Error& e) {
    const std::string what = e.what();
    CHECK(what.find("gamma") != std::string::npos);
    CHECK(what.find("eta") != std::string::npos);
    CHECK(what.find("mu") != std::string::npos);
  }
  CHECK_FALSE(inputs(1.0, 1, 1).violations().empty());
}

TEST_CASE("q restriction") {
  CHECK_FALSE(q_restriction_satisfied(2, 1, kInfinity));
  CHECK(q_restriction_satisfied(2, 1, 1e6));
  CHECK(q_restriction_satisfied(2, 0, kInfinity));
  CHECK(q_restriction_satisfied(3, 1, 6.0));
  CHECK_FALSE(q_restriction_satisfied(3, 1, 6.5));
  CHECK(q_restriction_satisfied(1, 0, kInfinity));
  RateInputs in = inputs(1.0, 1);
  in.dimension = 3;
  in.nu = 1;
  in.q = 8.0;
  in.eta = kInfinity;
  CHECK_FALSE(in.violations().empty());
}

TEST_CASE("observed orders") {
  const std::vector<double> hs{1.0, 0.5};
  CHECK(observed_orders(hs, std::vector<double>{3.2150e-03, 5.6505e-04})[0] ==
        doctest::Approx(2.5084).epsilon(1e-4));
  CHECK(observed_orders(hs, std::vector<double>{1.2843e-04, 1.0676e-05})[0] ==
        doctest::Approx(3.5886).epsilon(1e-4));
  const std::vector<double> flat{2.0, 2.0};
  CHECK(observed_orders(hs, flat)[0] == 0.0);
  const std::vector<double> hs3{1.0, 0.5, 0.25};
  const std::vector<double> v{3.0, 0.7, 0.1};
  const std::vector<double> w{300.0, 70.0, 10.0};
  const auto ov = observed_orders(hs3, v);
  const auto ow = observed_orders(hs3, w);
  for (std::size_t i = 0; i < ov.size(); ++i) CHECK(ov[i] == doctest::Approx(ow[i]).epsilon(1e-14));
}

}  // TEST_SUITE
