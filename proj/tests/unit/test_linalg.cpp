#include <doctest.h>

#include <numbers>
#include <stdexcept>

#include "blowup/linalg.hpp"
#include "helpers.hpp"

using namespace blowup;
using namespace testing_helpers;

TEST_SUITE("linalg") {
  TEST_CASE("matrix construction validates shape, range and field") {
    CHECK_THROWS_AS(Matrix(Field::Real, Eigen::MatrixXcd::Zero(2, 3)), std::invalid_argument);
    CHECK_THROWS_AS(Matrix::identity(Field::Real, 1), std::invalid_argument);
    CHECK_THROWS_AS(Matrix::identity(Field::Real, 9), std::invalid_argument);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Identity(2, 2);
    c(0, 1) = cd(0.0, 1.0);
    CHECK_THROWS_AS(Matrix(Field::Real, c), std::invalid_argument);
    CHECK_NOTHROW(Matrix(Field::Complex, c));
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2);
    bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Matrix(Field::Complex, bad), std::invalid_argument);
  }

  TEST_CASE("field tags round-trip") {
    CHECK(field_from_string(to_string(Field::Real)) == Field::Real);
    CHECK(field_from_string(to_string(Field::Complex)) == Field::Complex);
    CHECK_THROWS_AS(field_from_string("Q"), std::invalid_argument);
  }

  TEST_CASE("product checks dimension and field") {
    const Matrix a = Matrix::rotation(0.3);
    const Matrix b = Matrix::identity(Field::Real, 2).scaled(2.0);
    CHECK((a * b).entries().isApprox(2.0 * a.entries()));
    CHECK_THROWS_AS(a * Matrix::identity(Field::Complex, 2), std::invalid_argument);
    CHECK_THROWS_AS(a * Matrix::identity(Field::Real, 3), std::invalid_argument);
  }

  TEST_CASE("eigenvalues of a rotation are conjugate and unimodular") {
    const auto ev = eigenvalues(Matrix::rotation(std::numbers::pi / 3));
    REQUIRE(ev.size() == 2);
    for (const auto& z : ev) CHECK(std::abs(z) == doctest::Approx(1.0));
    CHECK(std::abs(ev[0] - std::conj(ev[1])) < 1e-12);
  }

  TEST_CASE("geometric and algebraic multiplicity differ on a Jordan block") {
    const auto comps = eigen_decompose(real_matrix(2, {2, 1, 0, 2}));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].lambda.real() == doctest::Approx(2.0));
    CHECK(comps[0].geometric_multiplicity == 1);
  }

  TEST_CASE("scalar matrix has a full eigenspace") {
    const auto comps = eigen_decompose(Matrix::identity(Field::Real, 4).scaled(3.0));
    REQUIRE(comps.size() == 1);
    CHECK(comps[0].geometric_multiplicity == 4);
    CHECK(column_rank(comps[0].basis) == 4);
  }

  TEST_CASE("real decomposition drops complex pairs, complex keeps them") {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
    m.topLeftCorner(2, 2) = Matrix::rotation(1.0).entries().real() * 2.0;
    m(2, 2) = 0.5;
    const auto real = eigen_decompose(Matrix::from_real(m));
    REQUIRE(real.size() == 1);
    CHECK(real[0].lambda.real() == doctest::Approx(0.5));
    const auto cplx = eigen_decompose(Matrix(Field::Complex, m.cast<cd>()));
    CHECK(cplx.size() == 3);
  }

  TEST_CASE("eigenspace bases are orthonormal eigenvectors") {
    const Matrix a = real_matrix(3, {4, 1, 0, 1, 4, 0, 0, 0, 3});
    for (const auto& c : eigen_decompose(a)) {
      for (const auto& v : c.basis) {
        CHECK(v.norm() == doctest::Approx(1.0));
        CHECK((a.apply(v) - c.lambda * v).norm() < 1e-10);
      }
    }
  }

  TEST_CASE("clustering groups nearby values and sorts") {
    const Scalar vals[] = {2.0, 1.0 + 1e-12, 1.0, cd(0.0, 1.0)};
    const auto cl = cluster_eigenvalues(vals, 1e-9);
    REQUIRE(cl.size() == 3);
    CHECK(cl[0] == cd(0.0, 1.0));
    CHECK(cl[1].real() == doctest::Approx(1.0));
    CHECK(cl[2].real() == doctest::Approx(2.0));
  }

  TEST_CASE("invertibility and kernels") {
    CHECK_FALSE(is_invertible(real_matrix(2, {1, 2, 2, 4})));
    CHECK(is_invertible(real_matrix(2, {1, 2, 3, 4})));
    CHECK(smallest_singular_value(Matrix::identity(Field::Real, 3).scaled(0.5)) == doctest::Approx(0.5));
    const Eigen::MatrixXcd k = kernel_basis(real_matrix(2, {1, 2, 2, 4}).entries(), 1e-9);
    REQUIRE(k.cols() == 1);
    CHECK((real_matrix(2, {1, 2, 2, 4}).entries() * k).norm() < 1e-12);
  }

  TEST_CASE("orthonormal span and rank of dependent vectors") {
    const Vector vs[] = {vec({1, 0, 0}), vec({1, 1, 0}), vec({2, 1, 0})};
    CHECK(column_rank(vs) == 2);
    const Eigen::MatrixXcd q = orthonormal_span(vs);
    CHECK(q.cols() == 2);
    CHECK((q.adjoint() * q - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12);
  }
}
