#pragma once

/// \file blowup_model.hpp
/// \brief The incidence model X = {(x, [y]) : x on the line [y]} of the blowup
/// of F^n at the origin, with the blowdown q and the line-bundle projection.

#include "blowup/projective.hpp"

namespace blowup {

/// Below this base norm a point is treated as lying on the exceptional locus
/// for lifting purposes.
inline constexpr double kLiftCutoff = 1e-13;

/// A point (x, [y]) of F^n x P(F^n). It belongs to X when x is a multiple of
/// the representative of y; the operations below check that on entry.
/// Points with x == 0 form the exceptional locus Sigma.
struct BlowupPoint {
  Vector x;
  ProjPoint y;

  bool on_sigma() const { return x.isZero(0.0); }
};

/// Point of Sigma over the direction y.
BlowupPoint sigma_point(const ProjPoint& y);

/// max_{j<k} |x_j y_k - x_k y_j| on the normalized representative of y.
double incidence_residual(const Vector& x, const ProjPoint& y);

/// Residual test with the relative tolerance tol * (1 + |x|).
bool is_incident(const BlowupPoint& p, double tol = kDefaultTol);

/// q(x, [y]) = x. Throws std::domain_error when p is not on X.
Vector blowdown(const BlowupPoint& p, double tol = kDefaultTol);

/// (x, [x]) for x away from the origin. Throws std::domain_error when
/// |x| <= cutoff: the whole of Sigma lies over the origin.
BlowupPoint lift_point(const Vector& x, Field field, double cutoff = kLiftCutoff);
BlowupPoint lift_point(const Eigen::VectorXd& x, double cutoff = kLiftCutoff);

/// (x, [y]) -> [y]: the universal line bundle projection onto Sigma.
ProjPoint bundle_projection(const BlowupPoint& p, double tol = kDefaultTol);

/// The scalar mu with x = mu * homog(y). Zero exactly on Sigma.
Scalar mu_of(const BlowupPoint& p, double tol = kDefaultTol);

}  // namespace blowup
