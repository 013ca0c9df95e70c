#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "blowup/sigma_dynamics.hpp"
#include "helpers.hpp"

using namespace blowup;
using namespace testing_helpers;

namespace {

ProjPoint rp(std::initializer_list<cd> xs) { return ProjPoint::normalize(Field::Real, vec(xs)); }

ScanResult scan_of(const Matrix& a, int resolution = 10000, Execution exec = Execution::Parallel) {
  const SigmaMap f(a);
  return brute_force_fixed_scan([&](const ProjPoint& p) { return f(p); }, a.dim(), resolution, 1e-6, exec);
}

}  // namespace

TEST_SUITE("sigma_dynamics") {
  TEST_CASE("sigma map rejects singular derivatives and is the identity for I") {
    CHECK_THROWS_AS(SigmaMap(real_matrix(2, {1, 2, 2, 4})), std::domain_error);
    const auto id = sigma_map(Matrix::identity(Field::Real, 3));
    const auto p = rp({1, -2, 0.5});
    CHECK(proj_eq(id(p), p));
  }

  TEST_CASE("fixed set examples") {
    const auto d23 = fixed_set_on_sigma(real_matrix(2, {2, 0, 0, 3}));
    REQUIRE(d23.components.size() == 2);
    CHECK(d23.components[0].proj_dim == 0);
    CHECK(d23.components[0].contains(rp({1, 0}), 1e-12));
    CHECK(d23.components[1].contains(rp({0, 1}), 1e-12));
    CHECK(d23.components[0].description() == "P(E_lambda) = P(F^1)");

    const auto rot = fixed_set_on_sigma(Matrix::rotation(std::numbers::pi / 6).scaled(2.0));
    CHECK(rot.components.empty());
    CHECK(rot.rotational_classes.size() == 1);

    const auto twice = fixed_set_on_sigma(Matrix::identity(Field::Real, 3).scaled(2.0));
    REQUIRE(twice.components.size() == 1);
    CHECK(twice.components[0].proj_dim == 2);

    const auto jordan = fixed_set_on_sigma(real_matrix(2, {2, 1, 0, 2}));
    REQUIRE(jordan.components.size() == 1);
    CHECK(jordan.components[0].proj_dim == 0);
  }

  TEST_CASE("complex fixed sets are never empty") {
    Eigen::MatrixXcd r = Matrix::rotation(1.0).entries();
    const auto f = fixed_set_on_sigma(Matrix(Field::Complex, r));
    CHECK(f.components.size() == 2);
  }

  TEST_CASE("every component point is fixed") {
    const Matrix a = real_matrix(3, {3, 1, 0, 0, 3, 0, 0, 0, -1});
    const SigmaMap f(a);
    for (const auto& c : fixed_set_on_sigma(a).components) {
      for (const auto& b : c.basis) {
        const auto p = ProjPoint::normalize(Field::Real, b);
        CHECK(proj_dist(f(p), p) < 1e-12);
      }
    }
  }

  TEST_CASE("scan examples") {
    const auto d23 = scan_of(real_matrix(2, {2, 0, 0, 3}));
    REQUIRE(d23.clusters.size() == 2);
    const auto id = scan_of(Matrix::identity(Field::Real, 2));
    CHECK(id.fixed_sample_count == id.sample_count);
    CHECK(id.clusters.size() == 1);
    CHECK(scan_of(Matrix::rotation(std::numbers::pi / 6).scaled(2.0)).clusters.empty());
    const auto circle = scan_of(real_matrix(3, {2, 0, 0, 0, 2, 0, 0, 0, 5}));
    CHECK(circle.clusters.size() == 2);
  }

  TEST_CASE("scan agrees with the eigenspace description") {
    for (const Matrix& a : {real_matrix(2, {1, 2, 3, -1}), real_matrix(3, {1, 2, 0, 0, 3, 1, 1, 0, -2}),
                            real_matrix(3, {2, 0, 0, 0, 2, 0, 0, 0, 5})}) {
      const auto cmp = compare_with_scan(fixed_set_on_sigma(a), scan_of(a), 1e-3);
      CHECK(cmp.matched);
      CHECK(cmp.max_location_error < 1e-6);
    }
  }

  TEST_CASE("scan validation and serial equality") {
    const SigmaMap f(Matrix::identity(Field::Real, 2));
    auto map = [&](const ProjPoint& p) { return f(p); };
    CHECK_THROWS_AS(brute_force_fixed_scan(map, 4, 10000, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(brute_force_fixed_scan(map, 2, 999, 1e-6), std::invalid_argument);
    const Matrix a = real_matrix(3, {1, 2, 0, 0, 3, 1, 1, 0, -2});
    const auto s = scan_of(a, 5000, Execution::Serial);
    const auto p = scan_of(a, 5000, Execution::Parallel);
    REQUIRE(s.clusters.size() == p.clusters.size());
    CHECK(s.fixed_sample_count == p.fixed_sample_count);
    for (std::size_t i = 0; i < s.clusters.size(); ++i) {
      CHECK((s.clusters[i].representative.homog() - p.clusters[i].representative.homog()).norm() == 0.0);
    }
  }

  TEST_CASE("orbits on Sigma and on X") {
    const auto f = sigma_map(real_matrix(2, {3, 0, 0, 1}));
    const auto o = iterate_orbit(f, rp({1, 1}), 20);
    CHECK(o.points.size() == 21);
    CHECK(proj_dist(o.points.back(), rp({1, 0})) <= 1e-9);
    CHECK(contraction_rate(o, rp({1, 0}), 2) == doctest::Approx(1.0 / 3).epsilon(0.05));

    const auto id = sigma_map(Matrix::identity(Field::Real, 2));
    const auto c = iterate_orbit(id, rp({0.3, 1}), 5);
    for (const auto& p : c.points) CHECK(proj_eq(p, rp({0.3, 1})));

    const Scalar half_third[] = {0.5, 1.0 / 3};
    const auto lift = lift_map(MapSpec::linear(Matrix::diagonal(Field::Real, half_third)));
    const auto orbit = iterate_orbit(lift, lift_point(vec({1, 1}), Field::Real), 30);
    const auto& last = orbit.points.back();
    CHECK(last.x(0).real() == doctest::Approx(std::pow(0.5, 30)));
    CHECK(last.x(1).real() == doctest::Approx(std::pow(1.0 / 3, 30)));
    CHECK(proj_dist(last.y, rp({1, 0})) == doctest::Approx(std::atan(std::pow(2.0 / 3, 30))).epsilon(1e-9));
    CHECK_THROWS_AS(iterate_orbit(f, rp({1, 1}), 0), std::invalid_argument);
  }

  TEST_CASE("orbit errors carry the failing step") {
    int calls = 0;
    auto flaky = [&](const ProjPoint& p) {
      if (++calls == 3) throw std::domain_error("bad step");
      return p;
    };
    try {
      iterate_orbit(flaky, rp({1, 0}), 5);
      FAIL("expected OrbitError");
    } catch (const OrbitError& e) {
      CHECK(e.step() == 3);
    }
  }

  TEST_CASE("invariant subspace traces") {
    const Scalar d[] = {0.5, 3.0};
    const auto spec = MapSpec::linear(Matrix::diagonal(Field::Real, d));
    const double scales[] = {1.0, 1e-3, 1e-6};
    const Vector e1[] = {vec({1, 0})};
    const auto stable = invariant_subspace_trace(spec, e1, scales);
    CHECK(stable.max_deviation == 0.0);
    CHECK(stable.max_image_deviation == 0.0);
    REQUIRE(stable.sigma_meeting.size() == 1);
    CHECK(proj_eq(stable.sigma_meeting[0], rp({1, 0})));
    const Vector e2[] = {vec({0, 1})};
    CHECK(proj_eq(invariant_subspace_trace(spec, e2, scales).sigma_meeting[0], rp({0, 1})));

    const auto upper = MapSpec::linear(real_matrix(2, {2, 1, 0, 3}));
    const Vector eig[] = {vec({1, 1})};
    CHECK(invariant_subspace_trace(upper, eig, scales).max_deviation <= 1e-12);
    const Vector not_inv[] = {vec({0, 1})};
    CHECK_THROWS_AS(invariant_subspace_trace(upper, not_inv, scales), std::domain_error);
  }
}
