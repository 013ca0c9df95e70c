#include <doctest.h>

#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "blowup/map_lift.hpp"
#include "helpers.hpp"

using namespace blowup;
using namespace testing_helpers;

namespace {

ProjPoint rp(std::initializer_list<cd> xs) { return ProjPoint::normalize(Field::Real, vec(xs)); }

}  // namespace

TEST_SUITE("map_lift") {
  TEST_CASE("derivatives at the origin") {
    const Matrix d23 = real_matrix(2, {2, 0, 0, 3});
    CHECK((derivative_at_origin(MapSpec::linear(d23)).entries() - d23.entries()).norm() == 0.0);
    CHECK((derivative_at_origin(MapSpec::paper_example_c1()).entries() - Eigen::MatrixXcd::Identity(2, 2)).norm() ==
          0.0);
    const Matrix a = real_matrix(2, {1, 2, 0, 1});
    const Matrix b = real_matrix(2, {0, 1, -1, 3});
    const auto comp = MapSpec::composite({MapSpec::linear(a), MapSpec::linear(b)});
    CHECK((comp.derivative().entries() - (a * b).entries()).norm() < 1e-15);
  }

  TEST_CASE("evaluation examples") {
    const Vector e = eval_map(MapSpec::paper_example_c1(), vec({0.5, 1}));
    CHECK(e(0).real() == doctest::Approx(0.75));
    CHECK(e(1).real() == doctest::Approx(1.0));
    const Vector r = eval_map(MapSpec::rotation_scaling(2.0, std::numbers::pi / 2), vec({1, 0}));
    CHECK(std::abs(r(0)) < 1e-15);
    CHECK(r(1).real() == doctest::Approx(2.0));
    CHECK(eval_map(MapSpec::kink_shear(3), vec({0, 0})).norm() == 0.0);
    CHECK_THROWS_AS(eval_map(MapSpec::paper_example_c1(), vec({1, 2, 3})), std::invalid_argument);
  }

  TEST_CASE("constructor validation") {
    CHECK_THROWS_AS(MapSpec::linear(real_matrix(2, {1, 1, 1, 1})), std::domain_error);
    CHECK_THROWS_AS(MapSpec::rotation_scaling(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(MapSpec::kink_shear(0), std::invalid_argument);
    // Constant term moves the origin.
    CHECK_THROWS_AS(MapSpec::polynomial(Field::Real, 2, {{{{0, 0}, 1.0}, {{1, 0}, 1.0}}, {{{0, 1}, 1.0}}}),
                    std::invalid_argument);
    // Complex coefficient over R.
    CHECK_THROWS_AS(MapSpec::polynomial(Field::Real, 2, {{{{1, 0}, cd(1, 1)}}, {{{0, 1}, 1.0}}}),
                    std::invalid_argument);
    // Singular linear part.
    CHECK_THROWS_AS(MapSpec::polynomial(Field::Real, 2, {{{{1, 0}, 1.0}}, {{{2, 0}, 1.0}}}), std::domain_error);
    CHECK_THROWS_AS(MapSpec::composite({}), std::invalid_argument);
    CHECK_THROWS_AS(MapSpec::composite({MapSpec::paper_example_c1(), MapSpec::linear(Matrix::identity(Field::Real, 3))}),
                    std::invalid_argument);
  }

  TEST_CASE("smoothness orders and family names") {
    CHECK(MapSpec::paper_example_c1().smoothness_order() == 1);
    CHECK(MapSpec::kink_shear(3).smoothness_order() == 3);
    CHECK(MapSpec::linear(Matrix::identity(Field::Real, 2)).smoothness_order() == kSmoothInfinity);
    CHECK(MapSpec::composite({MapSpec::kink_shear(2), MapSpec::paper_example_c1()}).smoothness_order() == 1);
    CHECK(MapSpec::paper_example_c1().family_name() == "paper_example_c1");
    CHECK(MapSpec::kink_shear(2).family_name() == "kink_shear");
  }

  TEST_CASE("lift examples") {
    const auto twice = lift_map(MapSpec::linear(Matrix::identity(Field::Real, 2).scaled(2.0)));
    const auto p = lift_point(vec({0.3, -0.2}), Field::Real);
    const auto w = twice(p);
    CHECK((w.x - 2.0 * p.x).norm() < 1e-15);
    CHECK(proj_eq(w.y, p.y));
    for (double a = 0; a < 3.0; a += 0.25) {
      const auto y = rp({std::cos(a), std::sin(a)});
      CHECK(proj_eq(twice(sigma_point(y)).y, y));
    }
    const auto kink_lift = lift_map(MapSpec::paper_example_c1());
    const auto s = sigma_point(rp({1, 3}));
    CHECK(proj_eq(kink_lift(s).y, s.y));
    const auto d23 = lift_map(MapSpec::linear(real_matrix(2, {2, 0, 0, 3})));
    CHECK(proj_eq(d23(sigma_point(rp({1, 1}))).y, rp({2, 3})));
    CHECK(d23(sigma_point(rp({1, 1}))).on_sigma());
    CHECK_THROWS_AS(d23(BlowupPoint{vec({1, 2}), rp({2, 1})}), std::domain_error);
  }

  TEST_CASE("fiber is continuous across Sigma along transverse lines for a smooth map") {
    const auto lift = lift_map(builtin_maps()[5].spec);
    const auto y = rp({0.6, 0.8});
    const auto on = lift(sigma_point(y));
    for (double t : {1e-3, 1e-6, 1e-9, 1e-12}) {
      const auto off = lift(lift_point(Vector(t * y.homog()), Field::Real));
      CHECK(proj_dist(off.y, on.y) <= 10 * t);
    }
  }

  TEST_CASE("near-Sigma clause uses the difference quotient") {
    const auto lift = lift_map(MapSpec::linear(real_matrix(2, {2, 0, 0, 3})));
    const auto y = rp({1, 1});
    const BlowupPoint tiny{Vector(1e-200 * y.homog()), y};
    CHECK(proj_eq(lift(tiny).y, rp({2, 3})));
  }

  TEST_CASE("commutation examples") {
    const auto linear = check_commutation(MapSpec::linear(real_matrix(2, {1, 2, -1, 0.5})), 10000, 1e-12, 3);
    CHECK(linear.passed);
    CHECK(linear.max_residual <= 1e-12);
    const auto kink = check_commutation(MapSpec::paper_example_c1(), 10000, 1e-12, 3);
    CHECK(kink.passed);
    CHECK(kink.samples == 10000);
    const auto sigma = sample_blowup_points(Field::Real, 2, 100, 4, SampleMix::SigmaOnly);
    CHECK(commutation_residuals(MapSpec::paper_example_c1(), sigma, 1e-12).max_residual == 0.0);
  }

  TEST_CASE("functoriality examples") {
    const double th = 0.4;
    const auto rot = MapSpec::linear(Matrix::rotation(th));
    CHECK(check_functoriality(rot, rot, 2000, 1e-12, 5).max_residual <= 1e-12);
    const auto comp = MapSpec::composite({rot, rot});
    CHECK((comp.derivative().entries() - Matrix::rotation(2 * th).entries()).norm() < 1e-14);
    const Scalar d21[] = {2.0, 1.0}, d13[] = {1.0, 3.0};
    const auto g = MapSpec::linear(Matrix::diagonal(Field::Real, d21));
    const auto h = MapSpec::linear(Matrix::diagonal(Field::Real, d13));
    const auto gh = lift_map(MapSpec::composite({g, h}));
    CHECK(proj_eq(gh(sigma_point(rp({1, 1}))).y, rp({2, 3})));
    const auto r = check_functoriality(MapSpec::paper_example_c1(), MapSpec::linear(real_matrix(2, {2, 0, 0, 3})),
                                       10000, 1e-10, 6);
    CHECK(r.passed);
    CHECK_THROWS_AS(check_functoriality(rot, MapSpec::linear(Matrix::identity(Field::Real, 3)), 10, 1e-9, 1),
                    std::invalid_argument);
  }

  TEST_CASE("serial and parallel reports are identical") {
    for (const auto& [name, spec] : builtin_maps()) {
      CAPTURE(name);
      const auto s = check_commutation(spec, 3000, 1e-10, 9, Execution::Serial);
      const auto p = check_commutation(spec, 3000, 1e-10, 9, Execution::Parallel);
      CHECK(s.max_residual == p.max_residual);
      CHECK(s.max_incidence == p.max_incidence);
      const auto fs = check_functoriality(spec, spec, 500, 1e-9, 9, Execution::Serial);
      const auto fp = check_functoriality(spec, spec, 500, 1e-9, 9, Execution::Parallel);
      CHECK(fs.max_residual == fp.max_residual);
    }
  }

  TEST_CASE("catalog covers every family over both fields") {
    std::set<std::string> families;
    bool complex = false;
    for (const auto& [name, spec] : builtin_maps()) {
      families.insert(std::string(spec.family_name()));
      complex = complex || spec.field() == Field::Complex;
    }
    CHECK(families.size() == 6);
    CHECK(complex);
  }
}
