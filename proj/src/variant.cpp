#include "blowup/variant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace blowup {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vector rotate_scale(const Vector& v, double angle, double scale) {
  const double c = std::cos(angle) * scale;
  const double s = std::sin(angle) * scale;
  Vector out(2);
  out(0) = c * v(0).real() - s * v(1).real();
  out(1) = s * v(0).real() + c * v(1).real();
  return out;
}

double wrap_pi(double angle) {
  return std::remainder(angle, kTwoPi);
}

}  // namespace

Conjugacy identity_conjugacy() {
  return Conjugacy{[](const Vector& v) { return v; }, [](const Vector& v) { return v; }};
}

Conjugacy spiral_conjugacy(double lambda, double theta) {
  if (!(lambda > 1.0) || !std::isfinite(lambda)) throw std::invalid_argument("spiral conjugacy needs lambda > 1");
  if (!std::isfinite(theta)) throw std::invalid_argument("spiral conjugacy needs a finite angle");
  const double twist = theta / std::log(lambda);
  auto make = [twist](double sign) {
    return [twist, sign](const Vector& v) -> Vector {
      if (v.size() != 2) throw std::invalid_argument("spiral conjugacy acts on the plane");
      const double r = v.norm();
      if (r == 0.0) return Vector::Zero(2);
      return rotate_scale(v, sign * twist * std::log(r), 1.0);
    };
  };
  return Conjugacy{make(1.0), make(-1.0)};
}

double conjugacy_residual(const Conjugacy& phi, const MapSpec& h0, const MapSpec& h1,
                          const std::vector<Vector>& points, Execution exec) {
  return max_over(
      points.size(),
      [&](std::size_t i) {
        const Vector& x = points[i];
        const Vector lhs = phi.forward(eval_map(h1, x));
        const Vector rhs = eval_map(h0, phi.forward(x));
        return (lhs - rhs).norm() / (1.0 + x.norm());
      },
      exec);
}

VariantBlowup::VariantBlowup(Conjugacy phi, const MapSpec& h1) : phi_(std::move(phi)), lift_(h1) {}

Vector VariantBlowup::blowdown(const BlowupPoint& p) const {
  return phi_.forward(blowup::blowdown(p));
}

VariantResult variant_blowup(const MapSpec& h0, const MapSpec& h1, const Conjugacy& phi, std::size_t samples,
                             double tol, std::uint64_t seed, Execution exec) {
  if (h0.dim() != h1.dim() || h0.field() != h1.field()) {
    throw std::invalid_argument("conjugate maps must share field and dimension");
  }
  const auto points = sample_blowup_points(h1.field(), h1.dim(), samples, seed);
  std::vector<Vector> base;
  base.reserve(points.size());
  for (const auto& p : points) base.push_back(p.x);

  VariantReport report;
  report.samples = points.size();
  report.tol = tol;
  report.conjugacy_residual = conjugacy_residual(phi, h0, h1, base, exec);
  if (!(report.conjugacy_residual <= tol)) {
    throw std::domain_error("phi does not conjugate h1 to h0 on the samples");
  }

  VariantBlowup blowup(phi, h1);
  report.diagram_residual = max_over(
      points.size(),
      [&](std::size_t i) {
        const Vector lhs = blowup.blowdown(blowup.lift(points[i]));
        const Vector rhs = eval_map(h0, blowup.blowdown(points[i]));
        return (lhs - rhs).norm();
      },
      exec);
  report.classical = fixed_set_on_sigma(h0.derivative());
  report.variant = fixed_set_on_sigma(h1.derivative());
  report.passed = report.diagram_residual <= tol;
  return VariantResult{std::move(blowup), std::move(report)};
}

namespace {

int sum_of(const std::vector<int>& v) {
  int s = 0;
  for (int m : v) {
    if (m < 1) throw std::invalid_argument("eigenvalue multiplicities must be >= 1");
    s += m;
  }
  return s;
}

void validate_allocation(const AllocationSpec& a, ParityPolicy policy) {
  if (a.dim_unstable < 0 || a.dim_stable < 0) throw std::invalid_argument("subspace dimensions must be >= 0");
  if (a.n() < kMinDim || a.n() > kMaxDim) throw std::invalid_argument("allocation dimension outside supported range");
  const int eu = sum_of(a.unstable_real);
  const int es = sum_of(a.stable_real);
  if (eu > a.dim_unstable) throw std::invalid_argument("real unstable multiplicities exceed dim E_u");
  if (es > a.dim_stable) throw std::invalid_argument("real stable multiplicities exceed dim E_s");
  if ((a.dim_unstable - eu) % 2 != 0 || (a.dim_stable - es) % 2 != 0) {
    throw std::invalid_argument("dimensions left for complex pairs must be even");
  }
  if (policy == ParityPolicy::Enforce && (a.dim_unstable % 2 != 0 || a.dim_stable % 2 != 0)) {
    throw std::invalid_argument("stable and unstable dimensions must both be even");
  }
}

}  // namespace

FixedSetPrediction predict_fixed_set(const AllocationSpec& alloc, ParityPolicy policy) {
  validate_allocation(alloc, policy);
  FixedSetPrediction out;
  out.even_dimensions = alloc.dim_unstable % 2 == 0 && alloc.dim_stable % 2 == 0;
  for (int m : alloc.unstable_real) out.components.push_back({true, m, m - 1});
  for (int m : alloc.stable_real) out.components.push_back({false, m, m - 1});
  out.complex_pairs = (alloc.n() - sum_of(alloc.unstable_real) - sum_of(alloc.stable_real)) / 2;
  if (out.components.empty()) {
    out.kind = "empty";
  } else if (std::all_of(out.components.begin(), out.components.end(), [](const auto& c) { return c.proj_dim == 0; })) {
    out.kind = "discrete";
  } else {
    out.kind = "positive_dimensional";
  }
  return out;
}

Matrix realize_allocation(const AllocationSpec& alloc, std::uint64_t seed) {
  validate_allocation(alloc, ParityPolicy::Report);
  const int n = alloc.n();
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  int at = 0;
  auto scalar_block = [&](double value, int m) {
    for (int k = 0; k < m; ++k, ++at) d(at, at) = value;
  };
  auto pair_block = [&](double radius, double angle) {
    d(at, at) = radius * std::cos(angle);
    d(at, at + 1) = -radius * std::sin(angle);
    d(at + 1, at) = radius * std::sin(angle);
    d(at + 1, at + 1) = radius * std::cos(angle);
    at += 2;
  };
  for (std::size_t k = 0; k < alloc.unstable_real.size(); ++k) scalar_block(1.5 + 0.5 * k, alloc.unstable_real[k]);
  const int unstable_pairs = (alloc.dim_unstable - sum_of(alloc.unstable_real)) / 2;
  for (int j = 0; j < unstable_pairs; ++j) pair_block(1.6 + 0.3 * j, 0.5 + 0.4 * j);
  for (std::size_t k = 0; k < alloc.stable_real.size(); ++k) scalar_block(0.25 + 0.1 * k, alloc.stable_real[k]);
  const int stable_pairs = (alloc.dim_stable - sum_of(alloc.stable_real)) / 2;
  for (int j = 0; j < stable_pairs; ++j) pair_block(0.6 - 0.08 * j, 0.9 + 0.35 * j);

  Rng rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ();
  return Matrix::from_real(q * d * q.transpose());
}

double tube_distance(const TubePoint& a, const TubePoint& b) {
  return 2.0 * std::abs(std::sin(0.5 * (a.angle - b.angle))) + std::abs(a.level - b.level);
}

TubeHomeo::TubeHomeo(std::vector<TubePoint> from, std::vector<TubePoint> to, double epsilon) : epsilon_(epsilon) {
  if (from.size() != to.size() || from.empty()) throw std::invalid_argument("tube knots must be nonempty matched pairs");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (!(epsilon < from.front().level) || !(epsilon < to.front().level)) {
    throw std::invalid_argument("epsilon must lie below the first knot level");
  }
  for (std::size_t i = 1; i < from.size(); ++i) {
    if (!(from[i].level > from[i - 1].level) || !(to[i].level > to[i - 1].level)) {
      throw std::invalid_argument("knot levels must be strictly increasing");
    }
  }
  src_levels_.push_back(epsilon);
  dst_levels_.push_back(epsilon);
  rotations_.push_back(0.0);
  for (std::size_t i = 0; i < from.size(); ++i) {
    src_levels_.push_back(from[i].level);
    dst_levels_.push_back(to[i].level);
    const double previous = rotations_.back();
    rotations_.push_back(previous + wrap_pi(to[i].angle - from[i].angle - previous));
  }
}

namespace {

double piecewise_linear(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  const auto it = std::lower_bound(xs.begin(), xs.end(), x);
  const auto k = static_cast<std::size_t>(it - xs.begin());
  if (it != xs.end() && *it == x) return ys[k];
  if (k == xs.size()) return ys.back() + (x - xs.back());
  const double w = (x - xs[k - 1]) / (xs[k] - xs[k - 1]);
  return ys[k - 1] + w * (ys[k] - ys[k - 1]);
}

}  // namespace

double TubeHomeo::level_forward(double s) const {
  if (s <= epsilon_) return s;
  return piecewise_linear(src_levels_, dst_levels_, s);
}

double TubeHomeo::level_inverse(double t) const {
  if (t <= epsilon_) return t;
  return piecewise_linear(dst_levels_, src_levels_, t);
}

double TubeHomeo::rotation_at(double t) const {
  if (t <= epsilon_) return 0.0;
  if (t >= dst_levels_.back()) return rotations_.back();
  const auto it = std::lower_bound(dst_levels_.begin(), dst_levels_.end(), t);
  const auto k = static_cast<std::size_t>(it - dst_levels_.begin());
  if (*it == t) return rotations_[k];
  const double w = (t - dst_levels_[k - 1]) / (dst_levels_[k] - dst_levels_[k - 1]);
  return rotations_[k - 1] + w * (rotations_[k] - rotations_[k - 1]);
}

TubePoint TubeHomeo::forward(const TubePoint& p) const {
  const double t = level_forward(p.level);
  return TubePoint{p.angle + rotation_at(t), t};
}

TubePoint TubeHomeo::inverse(const TubePoint& p) const {
  return TubePoint{p.angle - rotation_at(p.level), level_inverse(p.level)};
}

SequenceSchedule geometric_schedule(double ratio, int count) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw std::invalid_argument("schedule ratio must lie in (0, 1)");
  if (count < 1) throw std::invalid_argument("schedule needs at least one radius");
  SequenceSchedule s;
  for (int i = 1; i <= count; ++i) s.radii.push_back(std::pow(ratio, i));
  return s;
}

Vector PlanarTubeMap::apply(const Vector& v, bool invert) const {
  if (v.size() != 2) throw std::invalid_argument("planar tube map acts on the plane");
  const double r = v.norm();
  if (r == 0.0) return Vector::Zero(2);
  const double level = -std::log(r);
  if (level <= tube_.epsilon()) return v;
  const TubePoint source{0.0, level};
  const TubePoint image = invert ? tube_.inverse(source) : tube_.forward(source);
  return rotate_scale(v, image.angle, std::exp(-image.level) / r);
}

Vector PlanarTubeMap::forward(const Vector& v) const {
  return apply(v, false);
}

Vector PlanarTubeMap::inverse(const Vector& v) const {
  return apply(v, true);
}

NoLiftWitness no_lift_witness(const ProjPoint& x, const ProjPoint& y, const SequenceSchedule& schedule, double tol) {
  if (x.dim() != 2 || y.dim() != 2 || x.field() != Field::Real || y.field() != Field::Real) {
    throw std::invalid_argument("no-lift witness is built on the real blown-up plane");
  }
  if (!(proj_dist(x, y) >= 0.1)) throw std::invalid_argument("witness targets must be at least 0.1 apart");
  const auto& radii = schedule.radii;
  if (radii.size() < 4) throw std::invalid_argument("schedule needs at least four radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0 && radii[i] < 1.0)) throw std::invalid_argument("radii must lie in (0, 1)");
    if (i > 0 && !(radii[i] < radii[i - 1])) throw std::invalid_argument("radii must be strictly decreasing");
  }

  const Vector ux = x.homog();
  const Vector uy = y.homog();
  const double angle_x = std::atan2(ux(1).real(), ux(0).real());
  const double angle_y = std::atan2(uy(1).real(), uy(0).real());

  // 1-based index i: odd z_i come from the x_i, even z_i from the y_i.
  auto z_is_y = [](std::size_t k) { return (k + 1) % 2 == 0; };
  std::vector<TubePoint> from, to;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double level = -std::log(radii[k]);
    from.push_back({angle_x, level});
    to.push_back({z_is_y(k) ? angle_y : angle_x, level});
  }
  PlanarTubeMap h(TubeHomeo(from, to, 0.5 * from.front().level));

  NoLiftWitness out{h, {}};
  WitnessReport& report = out.report;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    report.max_knot_error = nan_max(report.max_knot_error, tube_distance(h.tube().forward(from[k]), to[k]));
  }

  const std::size_t count = radii.size();
  for (std::size_t k = 0; k < count; ++k) {
    const BlowupPoint xk = lift_point(Vector(radii[k] * ux), Field::Real);
    const Vector image = h.forward(blowdown(xk));
    // Off Sigma the lift is forced: q^-1 o h o q.
    report.fiber_images.push_back(bundle_projection(lift_point(image, Field::Real)));
    if (k + 5 >= count) {
      const Vector zk = radii[k] * (z_is_y(k) ? uy : ux);
      report.tail_max_norm = std::max({report.tail_max_norm, blowdown(xk).norm(), zk.norm()});
    }
  }
  report.blowdown_limit_norm = radii.back() * ux.norm();

  const std::size_t last = count - 1;
  const ProjPoint& limit_last = report.fiber_images[last];
  const ProjPoint& limit_other = report.fiber_images[last - 1];
  report.cluster_points = {z_is_y(last) ? limit_other : limit_last, z_is_y(last) ? limit_last : limit_other};
  report.separation = proj_dist(report.cluster_points[0], report.cluster_points[1]);
  for (std::size_t k = (count > 10 ? count - 10 : 0); k < count; ++k) {
    const ProjPoint& limit = report.fiber_images[(k % 2 == last % 2) ? last : last - 1];
    report.subsequence_spread = nan_max(report.subsequence_spread, proj_dist(report.fiber_images[k], limit));
  }

  for (int ring = 0; ring <= 40; ++ring) {
    const double r = radii.back() * 0.5 * std::pow(4.0 / radii.back(), ring / 40.0);
    for (int a = 0; a < 64; ++a) {
      const double angle = kTwoPi * a / 64.0;
      Vector v(2);
      v << r * std::cos(angle), r * std::sin(angle);
      const double e1 = (h.inverse(h.forward(v)) - v).norm();
      const double e2 = (h.forward(h.inverse(v)) - v).norm();
      report.max_roundtrip_error = nan_max(report.max_roundtrip_error, std::max(e1, e2));
    }
  }

  const bool certified = report.separation >= proj_dist(x, y) - tol && report.subsequence_spread <= tol &&
                         report.max_knot_error <= tol;
  report.verdict = certified ? "no_continuous_lift" : "inconclusive";
  return out;
}

}  // namespace blowup
