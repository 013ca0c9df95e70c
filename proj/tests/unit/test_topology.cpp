#include <doctest.h>

#include <stdexcept>

#include "blowup/topology.hpp"

using namespace blowup;

TEST_SUITE("topology") {
  TEST_CASE("projective and sphere Euler characteristics") {
    CHECK(euler_projective(2, Field::Real) == 1);
    CHECK(euler_projective(3, Field::Real) == 0);
    CHECK(euler_projective(2, Field::Complex) == 3);
    CHECK(euler_sphere(2, Field::Real) == 2);
    CHECK(euler_sphere(3, Field::Real) == 0);
    CHECK(euler_sphere(2, Field::Complex) == 2);
  }

  TEST_CASE("Euler characteristic after blowing up a point") {
    CHECK(euler_blowup(2, 2, Field::Real) == 1);
    CHECK(euler_blowup(2, 2, Field::Complex) == 3);
    CHECK(euler_blowup(3, 2, Field::Complex) == 4);
    for (Field f : {Field::Real, Field::Complex}) {
      CHECK(euler_blowup(euler_blowup(2, 3, f), 3, f) == 2 + 2 * (euler_projective(3, f) - euler_sphere(3, f)));
    }
    CHECK(euler_blowup(2, 3, Field::Real) == 2);
    CHECK(euler_blowup(0, 3, Field::Real) == 0);
    CHECK(euler_blowup(0, 2, Field::Real) == -1);
    CHECK_THROWS_AS(euler_blowup(2, 1, Field::Real), std::invalid_argument);
  }

  TEST_CASE("Chern table") {
    const auto t = chern_constants(2);
    CHECK(t[0].label == 'a');
    CHECK(t[0].sign == -1);
    CHECK(t[1].sign == -1);
    CHECK(t[2].sign == 1);
    CHECK(t[3].sign == -1);
    CHECK_THROWS_AS(chern_constants(0), std::invalid_argument);
  }

  TEST_CASE("topology reports") {
    const auto r = blowup_topology(2, 2, Field::Real);
    CHECK(r.summand == "RP2");
    CHECK(r.euler_after == 1);
    CHECK_FALSE(r.model_orientable);
    CHECK(r.sigma_dimension == 1);
    const auto c = blowup_topology(2, 2, Field::Complex);
    CHECK(c.model_orientable);
    CHECK(c.sigma_dimension == 2);
    CHECK(c.euler_after == 3);
    const auto s = surface_blowup_summary();
    CHECK(s.global_effect == "crosscap");
    CHECK_FALSE(s.model_orientable);
  }
}
