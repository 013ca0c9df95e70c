#include "blowup/projective.hpp"

#include <cmath>
#include <stdexcept>

namespace blowup {

namespace {

constexpr double kTieFraction = 1.0 - 1e-12;

}  // namespace

ProjPoint ProjPoint::normalize(Field field, const Vector& v) {
  if (v.size() < 1) throw std::invalid_argument("projective point needs at least one coordinate");
  if (field == Field::Real && !is_real(v)) {
    throw std::invalid_argument("real projective point has imaginary coordinates");
  }
  const double norm = v.norm();
  if (!std::isfinite(norm)) throw std::invalid_argument("projective point has non-finite coordinates");
  if (norm == 0.0) throw std::invalid_argument("zero vector has no projective class");

  Vector unit = v / norm;
  double largest = 0.0;
  for (Eigen::Index i = 0; i < unit.size(); ++i) largest = std::max(largest, std::abs(unit(i)));
  Eigen::Index pivot = 0;
  while (std::abs(unit(pivot)) < kTieFraction * largest) ++pivot;

  const Scalar phase = unit(pivot) / std::abs(unit(pivot));
  unit *= std::conj(phase);
  unit(pivot) = std::abs(unit(pivot));
  if (field == Field::Real) unit = unit.real().cast<Scalar>();
  return ProjPoint(field, std::move(unit));
}

ProjPoint ProjPoint::normalize(const Eigen::VectorXd& v) {
  return normalize(Field::Real, v.cast<Scalar>());
}

double proj_dist(const ProjPoint& a, const ProjPoint& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("projective dimension mismatch");
  if (a.field() != b.field()) throw std::invalid_argument("projective field mismatch");
  const Scalar overlap = a.homog().dot(b.homog());  // conjugates a
  const double cosine = std::abs(overlap);
  const double sine = (b.homog() - overlap * a.homog()).norm();
  return std::atan2(sine, cosine);
}

bool proj_eq(const ProjPoint& a, const ProjPoint& b, double tol) {
  return proj_dist(a, b) <= tol;
}

ProjPoint projectivize_linear_unchecked(const Matrix& a, const ProjPoint& p) {
  if (a.dim() != p.dim()) throw std::invalid_argument("matrix/point dimension mismatch");
  const Field field = (a.field() == Field::Complex || p.field() == Field::Complex) ? Field::Complex : Field::Real;
  return ProjPoint::normalize(field, a.apply(p.homog()));
}

ProjPoint projectivize_linear(const Matrix& a, const ProjPoint& p, double tol) {
  if (!is_invertible(a, tol)) throw std::domain_error("projectivization needs an invertible matrix");
  return projectivize_linear_unchecked(a, p);
}

Vector chart_coords(const ProjPoint& p, int chart, double tol) {
  if (chart < 0 || chart >= p.dim()) throw std::invalid_argument("chart index out of range");
  const Scalar pivot = p.homog()(chart);
  if (std::abs(pivot) <= tol) throw std::domain_error("point lies outside the requested chart");
  Vector out(p.dim() - 1);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < p.dim(); ++i) {
    if (i == chart) continue;
    out(k++) = p.homog()(i) / pivot;
  }
  return out;
}

ProjPoint chart_point(Field field, const Vector& coords, int chart) {
  const auto n = coords.size() + 1;
  if (chart < 0 || chart >= n) throw std::invalid_argument("chart index out of range");
  Vector v(n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) v(i) = (i == chart) ? Scalar(1.0) : coords(k++);
  return ProjPoint::normalize(field, v);
}

int best_chart(const ProjPoint& p) {
  double largest = 0.0;
  for (Eigen::Index i = 0; i < p.dim(); ++i) largest = std::max(largest, std::abs(p.homog()(i)));
  int pivot = 0;
  while (std::abs(p.homog()(pivot)) < kTieFraction * largest) ++pivot;
  return pivot;
}

double dist_to_subspace(const ProjPoint& p, const Eigen::MatrixXcd& orthonormal_basis) {
  if (orthonormal_basis.rows() != p.dim()) throw std::invalid_argument("subspace dimension mismatch");
  const Vector projected = orthonormal_basis * (orthonormal_basis.adjoint() * p.homog());
  const double cosine = projected.norm();
  const double sine = (p.homog() - projected).norm();
  return std::atan2(sine, cosine);
}

ProjPoint proj_midpoint(const ProjPoint& a, const ProjPoint& b) {
  const Scalar overlap = a.homog().dot(b.homog());
  // Rotate b's phase so the representatives are aligned before averaging.
  const Scalar phase = std::abs(overlap) > 0.0 ? std::conj(overlap) / std::abs(overlap) : Scalar(1.0);
  const Field field = a.field();
  return ProjPoint::normalize(field, a.homog() + phase * b.homog());
}

}  // namespace blowup
