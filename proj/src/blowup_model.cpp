#include "blowup/blowup_model.hpp"

#include <stdexcept>

namespace blowup {

namespace {

void require_incident(const BlowupPoint& p, double tol) {
  if (!is_incident(p, tol)) throw std::domain_error("point violates the incidence relation of X");
}

}  // namespace

BlowupPoint sigma_point(const ProjPoint& y) {
  return BlowupPoint{Vector::Zero(y.dim()), y};
}

double incidence_residual(const Vector& x, const ProjPoint& y) {
  if (x.size() != y.dim()) throw std::invalid_argument("base/fiber dimension mismatch");
  const Vector& v = y.homog();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    for (Eigen::Index k = j + 1; k < x.size(); ++k) {
      worst = std::max(worst, std::abs(x(j) * v(k) - x(k) * v(j)));
    }
  }
  return worst;
}

bool is_incident(const BlowupPoint& p, double tol) {
  return incidence_residual(p.x, p.y) <= tol * (1.0 + p.x.norm());
}

Vector blowdown(const BlowupPoint& p, double tol) {
  require_incident(p, tol);
  return p.x;
}

BlowupPoint lift_point(const Vector& x, Field field, double cutoff) {
  if (!(x.norm() > cutoff)) throw std::domain_error("lift at (or too near) the origin is not unique");
  return BlowupPoint{x, ProjPoint::normalize(field, x)};
}

BlowupPoint lift_point(const Eigen::VectorXd& x, double cutoff) {
  return lift_point(x.cast<Scalar>(), Field::Real, cutoff);
}

ProjPoint bundle_projection(const BlowupPoint& p, double tol) {
  require_incident(p, tol);
  return p.y;
}

Scalar mu_of(const BlowupPoint& p, double tol) {
  require_incident(p, tol);
  if (p.on_sigma()) return 0.0;
  // homog(y) is a unit vector, so the coefficient is the projection onto it.
  return p.y.homog().dot(p.x);
}

}  // namespace blowup
