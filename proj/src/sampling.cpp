#include "blowup/sampling.hpp"

#include <numbers>

namespace blowup {

Vector random_vector(Rng& rng, Field field, int n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = field == Field::Complex ? normal(rng) : 0.0;
    v(i) = Scalar(re, im);
  }
  return v;
}

ProjPoint random_proj_point(Rng& rng, Field field, int n) {
  for (;;) {
    const Vector v = random_vector(rng, field, n);
    if (v.norm() > 1e-6) return ProjPoint::normalize(field, v);
  }
}

std::vector<BlowupPoint> sample_blowup_points(Field field, int n, std::size_t count, std::uint64_t seed,
                                              SampleMix mix) {
  Rng rng(seed);
  std::uniform_real_distribution<double> log_radius(-8.0, std::log10(3.0));
  std::vector<BlowupPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const bool sigma = mix == SampleMix::SigmaOnly || (mix == SampleMix::Mixed && i % 10 == 0);
    const ProjPoint direction = random_proj_point(rng, field, n);
    if (sigma) {
      out.push_back(sigma_point(direction));
      continue;
    }
    const double radius = std::pow(10.0, log_radius(rng));
    Vector x = direction.homog() * radius;
    // Random sign (or phase) on the base point so mu is not always positive.
    if (field == Field::Real) {
      if (rng() & 1U) x = -x;
    } else {
      const double angle = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
      x *= std::polar(1.0, angle);
    }
    out.push_back(BlowupPoint{x, direction});
  }
  return out;
}

}  // namespace blowup
