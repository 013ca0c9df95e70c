#pragma once

/// \file regularity.hpp
/// \brief Finite-difference detection of the derivative lost by a lifted map
/// along curves that cross Sigma.

#include <functional>
#include <span>
#include <vector>

#include "blowup/map_lift.hpp"

namespace blowup {

/// The lifted line t -> ((t, m t), [t, m t]) in the real blown-up plane,
/// with c(0) = ((0, 0), [1, m]) on Sigma.
struct SigmaCurve {
  double slope = 1.0;

  explicit SigmaCurve(double m);
  BlowupPoint at(double t) const;
};

/// Step schedule 1e-2, 1e-3, ..., 1e-6.
std::vector<double> default_steps();

/// Left and right derivative estimates of a scalar function at 0.
struct SlopeEstimate {
  double left = 0.0;
  double right = 0.0;
  /// Spread between extrapolants plus a roundoff floor; shared by both sides.
  double noise = 0.0;

  double jump() const;
  /// jump > 10 * noise.
  bool kink() const;
};

/// One-sided first difference quotients at t = 0 on the given strictly
/// decreasing steps (at least three), extrapolated to zero step by two
/// levels of Richardson (Neville) elimination.
SlopeEstimate one_sided_slopes(const std::function<double(double)>& f, std::span<const double> steps);

/// One-sided derivatives of order `order` (1..4) at 0 from forward/backward
/// differences, extrapolated over a halving step schedule from base_step.
SlopeEstimate one_sided_higher(const std::function<double(double)>& f, int order, double base_step);

struct OneSidedReport {
  double slope = 0.0;
  int chart = 0;  ///< zero-based
  std::vector<double> left;
  std::vector<double> right;
  std::vector<double> jump;
  std::vector<double> noise;
  std::vector<bool> kink;
};

/// Chart of largest |coordinate| at the image of c(0) under the lift.
int auto_chart(const LiftedMap& lift, const SigmaCurve& curve);

/// One-sided slopes of chart_coords(fiber of lift(c(t)), chart) at t = 0.
/// Throws std::domain_error if an evaluated image leaves the chart and
/// std::invalid_argument for a bad step schedule or a non-planar real map.
OneSidedReport one_sided_derivatives(const LiftedMap& lift, const SigmaCurve& curve, int chart,
                                     std::span<const double> steps);

/// Same quotients for the base coordinates of lift(c(t)).
OneSidedReport base_one_sided_derivatives(const LiftedMap& lift, const SigmaCurve& curve,
                                          std::span<const double> steps);

/// Quotients along the Sigma curve s -> (0, [1, m + s]): the tangential
/// direction in which the lift is the projectivized derivative.
OneSidedReport sigma_tangent_derivatives(const LiftedMap& lift, const SigmaCurve& curve, int chart,
                                         std::span<const double> steps);

struct SmoothnessReport {
  int chart = 0;
  int max_order = 0;
  /// Per fiber chart coordinate: largest j <= max_order with matching
  /// one-sided j-th derivatives at 0 (and all lower orders matching).
  std::vector<int> order_per_coordinate;
  int order = 0;  ///< min over coordinates
  /// estimates[c][j-1] for coordinate c and derivative order j.
  std::vector<std::vector<SlopeEstimate>> estimates;
};

SmoothnessReport smoothness_probe(const LiftedMap& lift, const SigmaCurve& curve, int chart, int max_order);

}  // namespace blowup
