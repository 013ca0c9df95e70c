#pragma once

/// \file svg.hpp
/// \brief Static SVG phase portraits of orbits in the real blown-up plane.
///
/// A point (x, [y]) is drawn in the annulus around the Sigma circle: polar
/// angle 2 alpha, where alpha in [0, pi) is the fiber angle, and radius
/// R0 + A tanh(mu / mu_scale), where mu = <y, x> with the sign matching the
/// canonical y. Crossing alpha = 0 flips mu, so polylines break there.

#include <string>
#include <vector>

#include "blowup/sigma_dynamics.hpp"

namespace blowup {

struct SvgOptions {
  int size = 480;
  double sigma_radius = 150.0;
  double band_halfwidth = 80.0;
  double mu_scale = 0.5;
  std::string title;
};

/// Throws std::invalid_argument unless every point is real and planar.
std::string render_svg(const std::vector<Orbit<BlowupPoint>>& orbits, const FixedSetOnSigma* fixed,
                       const SvgOptions& options = {});

/// Writes render_svg(...) to path; throws std::runtime_error on I/O failure.
void emit_svg(const std::vector<Orbit<BlowupPoint>>& orbits, const FixedSetOnSigma* fixed, const std::string& path,
              const SvgOptions& options = {});

}  // namespace blowup
