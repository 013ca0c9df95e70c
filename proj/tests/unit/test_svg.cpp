#include <doctest.h>

#include <stdexcept>
#include <string>

#include "blowup/svg.hpp"
#include "helpers.hpp"

using namespace blowup;
using namespace testing_helpers;

namespace {

std::size_t count(const std::string& s, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = s.find(needle); pos != std::string::npos; pos = s.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_SUITE("svg") {
  TEST_CASE("empty picture is the Sigma circle") {
    const std::string svg = render_svg({}, nullptr);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count(svg, "<circle") == 1);
    CHECK(count(svg, "<polyline") == 0);
  }

  TEST_CASE("orbits and fixed points are drawn deterministically") {
    const Matrix a = real_matrix(2, {2, 0, 0, 0.5});
    const auto lift = lift_map(MapSpec::linear(a));
    std::vector<Orbit<BlowupPoint>> orbits{iterate_orbit(lift, lift_point(vec({0.3, 0.4}), Field::Real), 10)};
    const auto fixed = fixed_set_on_sigma(a);
    const std::string one = render_svg(orbits, &fixed);
    CHECK(one == render_svg(orbits, &fixed));
    CHECK(count(one, "<polyline") >= 1);
    CHECK(count(one, "class=\"fixed\"") == 2);
    CHECK(count(one, "class=\"start\"") == 1);
  }

  TEST_CASE("only real planar data") {
    const auto lift = lift_map(MapSpec::linear(Matrix::identity(Field::Real, 3)));
    std::vector<Orbit<BlowupPoint>> orbits{iterate_orbit(lift, lift_point(vec({1, 1, 1}), Field::Real), 2)};
    CHECK_THROWS_AS(render_svg(orbits, nullptr), std::invalid_argument);
  }
}
