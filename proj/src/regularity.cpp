#include "blowup/regularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace blowup {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_planar_real(const LiftedMap& lift) {
  if (lift.base().dim() != 2 || lift.base().field() != Field::Real) {
    throw std::invalid_argument("curve probes need a real planar map");
  }
}

void require_decreasing(std::span<const double> steps) {
  if (steps.size() < 3) throw std::invalid_argument("need at least three steps");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0.0)) throw std::invalid_argument("steps must be positive");
    if (i > 0 && !(steps[i] < steps[i - 1])) throw std::invalid_argument("steps must be strictly decreasing");
  }
}

// Value at zero step of the quadratic through three (step, quotient) pairs.
double neville_at_zero(const double* s, const double* d) {
  const double p01 = (s[0] * d[1] - s[1] * d[0]) / (s[0] - s[1]);
  const double p12 = (s[1] * d[2] - s[2] * d[1]) / (s[1] - s[2]);
  return (s[0] * p12 - s[2] * p01) / (s[0] - s[2]);
}

struct Extrapolated {
  double value;
  double spread;
};

Extrapolated extrapolate(std::span<const double> steps, const std::vector<double>& quotients) {
  std::vector<double> windows;
  for (std::size_t w = 0; w + 2 < steps.size(); ++w) windows.push_back(neville_at_zero(&steps[w], &quotients[w]));
  const double last = windows.back();
  const double spread = windows.size() > 1 ? std::abs(last - windows[windows.size() - 2]) : 0.0;
  return {last, spread};
}

SlopeEstimate combine(std::span<const double> steps, const std::vector<double>& left, const std::vector<double>& right,
                      double floor) {
  const auto l = extrapolate(steps, left);
  const auto r = extrapolate(steps, right);
  SlopeEstimate out;
  out.left = l.value;
  out.right = r.value;
  out.noise = std::max(l.spread, r.spread) + floor + 1e-9 * (std::abs(l.value) + std::abs(r.value));
  return out;
}

double binomial(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double real_chart_coord(const ProjPoint& p, int chart, int coord) {
  return chart_coords(p, chart)(coord).real();
}

OneSidedReport report_from(double slope, int chart, const std::vector<SlopeEstimate>& estimates) {
  OneSidedReport r;
  r.slope = slope;
  r.chart = chart;
  for (const auto& e : estimates) {
    r.left.push_back(e.left);
    r.right.push_back(e.right);
    r.jump.push_back(e.jump());
    r.noise.push_back(e.noise);
    r.kink.push_back(e.kink());
  }
  return r;
}

}  // namespace

SigmaCurve::SigmaCurve(double m) : slope(m) {
  if (!(m != 0.0) || !std::isfinite(m)) throw std::invalid_argument("curve slope must be finite and nonzero");
}

BlowupPoint SigmaCurve::at(double t) const {
  Eigen::VectorXd base(2);
  if (t == 0.0) {
    base << 1.0, slope;
    return sigma_point(ProjPoint::normalize(base));
  }
  base << t, slope * t;
  return lift_point(base, 0.0);
}

std::vector<double> default_steps() {
  return {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
}

double SlopeEstimate::jump() const {
  return std::abs(right - left);
}

bool SlopeEstimate::kink() const {
  return jump() > 10.0 * noise;
}

SlopeEstimate one_sided_slopes(const std::function<double(double)>& f, std::span<const double> steps) {
  require_decreasing(steps);
  const double f0 = f(0.0);
  double scale = std::abs(f0);
  std::vector<double> left, right;
  for (const double s : steps) {
    const double fp = f(s);
    const double fm = f(-s);
    scale = std::max({scale, std::abs(fp), std::abs(fm)});
    right.push_back((fp - f0) / s);
    left.push_back((f0 - fm) / s);
  }
  const double floor = 10.0 * kEps * scale / steps.back();
  return combine(steps, left, right, floor);
}

SlopeEstimate one_sided_higher(const std::function<double(double)>& f, int order, double base_step) {
  if (order < 1 || order > 4) throw std::invalid_argument("derivative order must be in 1..4");
  if (!(base_step > 0.0)) throw std::invalid_argument("base step must be positive");
  std::vector<double> steps;
  for (int i = 0; i < 5; ++i) steps.push_back(base_step / static_cast<double>(1 << i));
  std::vector<double> left, right;
  double scale = 0.0;
  for (const double s : steps) {
    double forward = 0.0;
    double backward = 0.0;
    for (int k = 0; k <= order; ++k) {
      const double c = binomial(order, k);
      const double fp = f(k * s);
      const double fm = f(-k * s);
      scale = std::max({scale, std::abs(fp), std::abs(fm)});
      forward += (((order - k) % 2 == 0) ? c : -c) * fp;
      backward += ((k % 2 == 0) ? c : -c) * fm;
    }
    const double denom = std::pow(s, order);
    right.push_back(forward / denom);
    left.push_back(backward / denom);
  }
  const double floor = 10.0 * std::pow(2.0, order) * kEps * scale / std::pow(steps.back(), order);
  return combine(steps, left, right, floor);
}

int auto_chart(const LiftedMap& lift, const SigmaCurve& curve) {
  return best_chart(lift(curve.at(0.0)).y);
}

OneSidedReport one_sided_derivatives(const LiftedMap& lift, const SigmaCurve& curve, int chart,
                                     std::span<const double> steps) {
  require_planar_real(lift);
  require_decreasing(steps);
  std::vector<SlopeEstimate> estimates;
  for (int coord = 0; coord < lift.base().dim() - 1; ++coord) {
    estimates.push_back(one_sided_slopes(
        [&](double t) { return real_chart_coord(lift(curve.at(t)).y, chart, coord); }, steps));
  }
  return report_from(curve.slope, chart, estimates);
}

OneSidedReport base_one_sided_derivatives(const LiftedMap& lift, const SigmaCurve& curve,
                                          std::span<const double> steps) {
  require_planar_real(lift);
  std::vector<SlopeEstimate> estimates;
  for (int coord = 0; coord < lift.base().dim(); ++coord) {
    estimates.push_back(one_sided_slopes([&](double t) { return lift(curve.at(t)).x(coord).real(); }, steps));
  }
  return report_from(curve.slope, -1, estimates);
}

OneSidedReport sigma_tangent_derivatives(const LiftedMap& lift, const SigmaCurve& curve, int chart,
                                         std::span<const double> steps) {
  require_planar_real(lift);
  auto along_sigma = [&](double s) {
    Eigen::VectorXd direction(2);
    direction << 1.0, curve.slope + s;
    return lift(sigma_point(ProjPoint::normalize(direction))).y;
  };
  std::vector<SlopeEstimate> estimates;
  for (int coord = 0; coord < lift.base().dim() - 1; ++coord) {
    estimates.push_back(
        one_sided_slopes([&](double s) { return real_chart_coord(along_sigma(s), chart, coord); }, steps));
  }
  return report_from(curve.slope, chart, estimates);
}

SmoothnessReport smoothness_probe(const LiftedMap& lift, const SigmaCurve& curve, int chart, int max_order) {
  require_planar_real(lift);
  if (max_order < 1 || max_order > 4) throw std::invalid_argument("max_order must be in 1..4");
  constexpr double kBaseStep = 0.04;
  SmoothnessReport report;
  report.chart = chart;
  report.max_order = max_order;
  report.order = max_order;
  for (int coord = 0; coord < lift.base().dim() - 1; ++coord) {
    auto f = [&](double t) { return real_chart_coord(lift(curve.at(t)).y, chart, coord); };
    std::vector<SlopeEstimate> per_order;
    int order = max_order;
    for (int j = 1; j <= max_order; ++j) {
      per_order.push_back(one_sided_higher(f, j, kBaseStep));
      if (per_order.back().kink()) {
        order = j - 1;
        break;
      }
    }
    report.order_per_coordinate.push_back(order);
    report.order = std::min(report.order, order);
    report.estimates.push_back(std::move(per_order));
  }
  return report;
}

}  // namespace blowup
