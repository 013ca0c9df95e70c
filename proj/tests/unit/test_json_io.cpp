#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "blowup/json_io.hpp"
#include "helpers.hpp"

using namespace blowup;
using namespace testing_helpers;

TEST_SUITE("json_io") {
  TEST_CASE("scalars and non-finite numbers") {
    CHECK(scalar_from_json(Json(2.5)) == cd(2.5, 0));
    CHECK(scalar_from_json(Json::parse("[1, -2]")) == cd(1, -2));
    CHECK_THROWS_AS(scalar_from_json(Json("x")), std::invalid_argument);
    CHECK(number(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(number(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(number(std::nan("")) == "nan");
  }

  TEST_CASE("matrix field inference") {
    CHECK(matrix_from_json(Json::parse("[[2, 1], [0, 3]]")).field() == Field::Real);
    const auto c = matrix_from_json(Json::parse("[[[1, 1], 0], [0, 3]]"));
    CHECK(c.field() == Field::Complex);
    CHECK(c(0, 0) == cd(1, 1));
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[[1, 2], [3]]")), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json(Json::parse("[]")), std::invalid_argument);
  }

  TEST_CASE("map specs round-trip") {
    for (const auto& named : builtin_maps()) {
      const Json j = to_json(named.spec);
      const MapSpec back = map_spec_from_json(j);
      CHECK(to_json(back) == j);
      CHECK(back.dim() == named.spec.dim());
      CHECK(back.field() == named.spec.field());
      Vector x = Vector::Constant(named.spec.dim(), cd(0.1, 0));
      x(0) = 0.3;
      CHECK((eval_map(back, x) - eval_map(named.spec, x)).norm() == 0.0);
    }
  }

  TEST_CASE("map spec errors") {
    CHECK_THROWS_AS(map_spec_from_json(Json::parse("{}")), std::invalid_argument);
    CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"family": "nope"})")), std::invalid_argument);
    CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"family": "linear"})")), std::invalid_argument);
    CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"family": "composite", "maps": []})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(map_spec_from_json(Json::parse(R"({"family": "rotation_scaling", "lambda": "2"})")),
                    std::invalid_argument);
  }

  TEST_CASE("report encodings use one-based charts") {
    OneSidedReport r;
    r.chart = 1;
    r.left = {-1};
    r.right = {1};
    r.jump = {2};
    r.noise = {0};
    r.kink = {true};
    const Json j = to_json(r);
    CHECK(j["chart"] == 2);
    CHECK(j["kink"][0] == true);
  }

  TEST_CASE("points") {
    const auto p = ProjPoint::normalize(Field::Real, vec({3, 4}));
    CHECK(proj_eq(proj_point_from_json(to_json(p), Field::Real), p));
    CHECK(proj_eq(proj_point_from_json(Json::parse("[3, 4]"), Field::Real), p));
  }
}
