#pragma once

/// \file projective.hpp
/// \brief Points of P(F^n), the angle metric, projectivized linear maps and
/// affine charts.

#include "blowup/linalg.hpp"

namespace blowup {

/// Default threshold below which two projective points are considered equal.
inline constexpr double kProjEqTol = 1e-9;

/// A line through the origin of F^n, stored by a normalized representative:
/// unit Euclidean norm, and the coordinate of largest modulus is real and
/// positive. Ties in modulus go to the lowest index.
class ProjPoint {
 public:
  /// Throws std::invalid_argument for a zero or non-finite vector, or for a
  /// vector with imaginary parts when field is Real.
  static ProjPoint normalize(Field field, const Vector& v);
  static ProjPoint normalize(const Eigen::VectorXd& v);

  Field field() const { return field_; }
  int dim() const { return static_cast<int>(homog_.size()); }
  const Vector& homog() const { return homog_; }

 private:
  ProjPoint(Field field, Vector homog) : field_(field), homog_(std::move(homog)) {}

  Field field_;
  Vector homog_;
};

/// arccos |<a, b>| on unit representatives, evaluated through atan2 so that
/// nearby points keep full relative precision. Range [0, pi/2].
double proj_dist(const ProjPoint& a, const ProjPoint& b);

bool proj_eq(const ProjPoint& a, const ProjPoint& b, double tol = kProjEqTol);

/// [A v]. Throws std::domain_error if A is singular.
ProjPoint projectivize_linear(const Matrix& a, const ProjPoint& p, double tol = kDefaultTol);

/// Same as projectivize_linear without the invertibility check; callers that
/// validated A once (SigmaMap, LiftedMap) use this in inner loops.
ProjPoint projectivize_linear_unchecked(const Matrix& a, const ProjPoint& p);

/// Affine chart {v_j != 0}; chart indices are zero-based.
/// Returns (v_k / v_j) for k != j in index order.
/// Throws std::domain_error when |v_j| <= tol.
Vector chart_coords(const ProjPoint& p, int chart, double tol = kDefaultTol);

/// Inverse of chart_coords: inserts 1 at position chart.
ProjPoint chart_point(Field field, const Vector& coords, int chart);

/// Chart containing p with the largest |v_j| (lowest index on ties).
int best_chart(const ProjPoint& p);

/// Angle from p to the projectivized subspace spanned by the orthonormal
/// columns of basis: angle between a representative and its orthogonal
/// projection onto the subspace.
double dist_to_subspace(const ProjPoint& p, const Eigen::MatrixXcd& orthonormal_basis);

/// Geodesic midpoint of two projective points (aligned representatives).
ProjPoint proj_midpoint(const ProjPoint& a, const ProjPoint& b);

}  // namespace blowup
