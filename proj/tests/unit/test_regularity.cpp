#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "blowup/regularity.hpp"
#include "helpers.hpp"

using namespace blowup;
using namespace testing_helpers;

TEST_SUITE("regularity") {
  TEST_CASE("curve through Sigma") {
    CHECK_THROWS_AS(SigmaCurve(0.0), std::invalid_argument);
    const SigmaCurve c(2.0);
    const auto p0 = c.at(0.0);
    CHECK(p0.on_sigma());
    CHECK(proj_eq(p0.y, ProjPoint::normalize(Field::Real, vec({1, 2}))));
    const auto p = c.at(-0.1);
    CHECK(is_incident(p));
    CHECK(p.x(1).real() == doctest::Approx(-0.2));
  }

  TEST_CASE("scalar one-sided slopes of |t| and smooth functions") {
    const auto steps = default_steps();
    const auto kink = one_sided_slopes([](double t) { return 3.0 + std::abs(t); }, steps);
    CHECK(kink.left == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(kink.right == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(kink.kink());
    const auto smooth = one_sided_slopes([](double t) { return std::sin(2 * t); }, steps);
    CHECK(smooth.jump() < 1e-9);
    CHECK_FALSE(smooth.kink());
    const double bad[] = {1e-3, 1e-2, 1e-4};
    CHECK_THROWS_AS(one_sided_slopes([](double t) { return t; }, bad), std::invalid_argument);
    const double short_steps[] = {1e-2, 1e-3};
    CHECK_THROWS_AS(one_sided_slopes([](double t) { return t; }, short_steps), std::invalid_argument);
  }

  TEST_CASE("higher one-sided derivatives") {
    const auto d2 = one_sided_higher([](double t) { return t * std::abs(t); }, 2, 0.04);
    CHECK(d2.left == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(d2.right == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(d2.kink());
    const auto d3 = one_sided_higher([](double t) { return std::exp(t); }, 3, 0.04);
    CHECK_FALSE(d3.kink());
    CHECK(d3.left == doctest::Approx(1.0).epsilon(1e-3));
    CHECK_THROWS_AS(one_sided_higher([](double t) { return t; }, 5, 0.04), std::invalid_argument);
  }

  TEST_CASE("kink example: slopes -1/m and +1/m in the chart about [0,1]") {
    const auto lift = lift_map(MapSpec::paper_example_c1());
    for (double m : {1.0, 2.0, -0.5}) {
      const auto r = one_sided_derivatives(lift, SigmaCurve(m), 1, default_steps());
      REQUIRE(r.jump.size() == 1);
      CHECK(r.left[0] == doctest::Approx(-1.0 / m).epsilon(1e-6));
      CHECK(r.right[0] == doctest::Approx(1.0 / m).epsilon(1e-6));
      CHECK(r.jump[0] == doctest::Approx(2.0 / std::abs(m)).epsilon(1e-6));
      CHECK(r.kink[0]);
    }
  }

  TEST_CASE("chart coordinate matches the closed form (1 + |t|)/m") {
    const auto lift = lift_map(MapSpec::paper_example_c1());
    const SigmaCurve c(4.0);
    for (double t : {-0.3, -1e-4, 0.0, 2e-5, 0.2}) {
      const Vector coords = chart_coords(lift(c.at(t)).y, 1);
      CHECK(coords(0).real() == doctest::Approx((1.0 + std::abs(t)) / 4.0).epsilon(1e-12));
    }
  }

  TEST_CASE("linear maps show no jump in any usable chart") {
    const auto lift = lift_map(MapSpec::linear(real_matrix(2, {2, 0, 0, 3})));
    for (double m : {0.5, -2.0, 4.0}) {
      const SigmaCurve c(m);
      for (int chart : {0, 1}) {
        const auto r = one_sided_derivatives(lift, c, chart, default_steps());
        CHECK(r.jump[0] <= 1e-6);
      }
      CHECK(auto_chart(lift, c) == (std::abs(3 * m) > 2 ? 1 : 0));
    }
  }

  TEST_CASE("base coordinates keep their one-sided derivatives") {
    const auto lift = lift_map(MapSpec::paper_example_c1());
    const auto r = base_one_sided_derivatives(lift, SigmaCurve(1.5), default_steps());
    REQUIRE(r.jump.size() == 2);
    for (double j : r.jump) CHECK(j <= 1e-6);
  }

  TEST_CASE("along Sigma the lift is the projectivized derivative") {
    const auto lift = lift_map(MapSpec::paper_example_c1());
    const auto r = sigma_tangent_derivatives(lift, SigmaCurve(1.0), 1, default_steps());
    CHECK(r.jump[0] <= 1e-6);
    // P(identity) in the chart: s -> 1/(1+s), slope -1 at s = 0.
    CHECK(r.left[0] == doctest::Approx(-1.0).epsilon(1e-6));
  }

  TEST_CASE("smoothness probe") {
    const SigmaCurve c(1.0);
    CHECK(smoothness_probe(lift_map(MapSpec::paper_example_c1()), c, 1, 3).order == 0);
    CHECK(smoothness_probe(lift_map(MapSpec::kink_shear(2)), c, 1, 4).order == 1);
    CHECK(smoothness_probe(lift_map(MapSpec::kink_shear(3)), c, 1, 4).order == 2);
    CHECK(smoothness_probe(lift_map(MapSpec::linear(real_matrix(2, {2, 1, 0, 3}))), c, 1, 4).order == 4);
    const auto cubic = MapSpec::polynomial(Field::Real, 2, {{{{1, 0}, 1.0}, {{3, 0}, 1.0}}, {{{0, 1}, 1.0}}});
    CHECK(smoothness_probe(lift_map(cubic), c, 1, 4).order >= 2);
    CHECK_THROWS_AS(smoothness_probe(lift_map(MapSpec::paper_example_c1()), c, 1, 5), std::invalid_argument);
  }

  TEST_CASE("errors: leaving the chart and non-planar maps") {
    const auto lift = lift_map(MapSpec::linear(real_matrix(2, {1, 0, 0, 1})));
    // Line of slope m meets Sigma at [1, m]; chart 0 is fine, but [1,m] for tiny m is nearly outside chart 1.
    CHECK_THROWS_AS(one_sided_derivatives(lift, SigmaCurve(1e-12), 1, default_steps()), std::domain_error);
    const auto lift3 = lift_map(MapSpec::linear(Matrix::identity(Field::Real, 3)));
    CHECK_THROWS_AS(one_sided_derivatives(lift3, SigmaCurve(1.0), 1, default_steps()), std::invalid_argument);
  }
}
