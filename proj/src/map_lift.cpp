#include "blowup/map_lift.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace blowup {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Scalar integer_power(Scalar base, int exponent) {
  Scalar out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

double integer_power(double base, int exponent) {
  double out = 1.0;
  for (int i = 0; i < exponent; ++i) out *= base;
  return out;
}

void require_invertible(const Matrix& d) {
  if (!is_invertible(d)) throw std::domain_error("derivative at the origin is singular");
}

}  // namespace

MapSpec::MapSpec(Field field, int dim, int smoothness, MapFamily family, Matrix derivative)
    : field_(field),
      dim_(dim),
      smoothness_(smoothness),
      family_(std::make_shared<const MapFamily>(std::move(family))),
      derivative_(std::make_shared<const Matrix>(std::move(derivative))) {
  require_invertible(*derivative_);
}

MapSpec MapSpec::linear(Matrix matrix) {
  const Field field = matrix.field();
  const int n = matrix.dim();
  Matrix d = matrix;
  return MapSpec(field, n, kSmoothInfinity, LinearFamily{std::move(matrix)}, std::move(d));
}

MapSpec MapSpec::kink_shear(int order) {
  if (order < 1) throw std::invalid_argument("kink shear order must be >= 1");
  // g(x) = x + x^k |x| has g'(0) = 1 for every k >= 1.
  return MapSpec(Field::Real, 2, order, KinkShearFamily{order}, Matrix::identity(Field::Real, 2));
}

MapSpec MapSpec::polynomial(Field field, int n, std::vector<std::vector<Monomial>> coordinates) {
  if (static_cast<int>(coordinates.size()) != n) {
    throw std::invalid_argument("polynomial map needs one term list per coordinate");
  }
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (const Monomial& term : coordinates[static_cast<std::size_t>(i)]) {
      if (static_cast<int>(term.exponents.size()) != n) {
        throw std::invalid_argument("monomial exponent vector has the wrong length");
      }
      int degree = 0;
      for (int e : term.exponents) {
        if (e < 0) throw std::invalid_argument("negative monomial exponent");
        degree += e;
      }
      if (degree == 0) throw std::invalid_argument("polynomial map must have zero constant terms");
      if (field == Field::Real && term.coeff.imag() != 0.0) {
        throw std::invalid_argument("real polynomial map has a complex coefficient");
      }
      if (degree == 1) {
        const auto j = std::find(term.exponents.begin(), term.exponents.end(), 1) - term.exponents.begin();
        d(i, j) += term.coeff;
      }
    }
  }
  Matrix derivative(field, std::move(d));
  return MapSpec(field, n, kSmoothInfinity, PolynomialFamily{std::move(coordinates)}, std::move(derivative));
}

MapSpec MapSpec::rotation_scaling(double lambda, double theta) {
  if (!(lambda > 0.0) || !std::isfinite(lambda) || !std::isfinite(theta)) {
    throw std::invalid_argument("rotation_scaling needs finite lambda > 0 and finite theta");
  }
  return MapSpec(Field::Real, 2, kSmoothInfinity, RotationScalingFamily{lambda, theta},
                 Matrix::rotation(theta).scaled(lambda));
}

MapSpec MapSpec::composite(std::vector<MapSpec> maps) {
  if (maps.empty()) throw std::invalid_argument("composite map needs at least one factor");
  const Field field = maps.front().field();
  const int n = maps.front().dim();
  int smoothness = kSmoothInfinity;
  Matrix d = Matrix::identity(field, n);
  for (const MapSpec& m : maps) {
    if (m.field() != field || m.dim() != n) {
      throw std::invalid_argument("composite factors must share field and dimension");
    }
    smoothness = std::min(smoothness, m.smoothness_order());
    d = d * m.derivative();
  }
  return MapSpec(field, n, smoothness, CompositeFamily{std::move(maps)}, std::move(d));
}

std::string_view MapSpec::family_name() const {
  return std::visit(overloaded{
                        [](const LinearFamily&) -> std::string_view { return "linear"; },
                        [](const KinkShearFamily& k) -> std::string_view {
                          return k.order == 1 ? "paper_example_c1" : "kink_shear";
                        },
                        [](const PolynomialFamily&) -> std::string_view { return "polynomial"; },
                        [](const RotationScalingFamily&) -> std::string_view { return "rotation_scaling"; },
                        [](const CompositeFamily&) -> std::string_view { return "composite"; },
                    },
                    *family_);
}

Matrix derivative_at_origin(const MapSpec& spec) {
  return spec.derivative();
}

Vector eval_map(const MapSpec& spec, const Vector& x) {
  if (x.size() != spec.dim()) throw std::invalid_argument("map/point dimension mismatch");
  return std::visit(
      overloaded{
          [&](const LinearFamily& f) -> Vector { return f.matrix.apply(x); },
          [&](const KinkShearFamily& f) -> Vector {
            const double s = x(0).real();
            Vector out = x;
            out(0) = s + integer_power(s, f.order) * std::abs(s);
            return out;
          },
          [&](const PolynomialFamily& f) -> Vector {
            Vector out = Vector::Zero(spec.dim());
            for (int i = 0; i < spec.dim(); ++i) {
              Scalar sum = 0.0;
              for (const Monomial& term : f.coordinates[static_cast<std::size_t>(i)]) {
                Scalar product = term.coeff;
                for (int j = 0; j < spec.dim(); ++j) {
                  product *= integer_power(x(j), term.exponents[static_cast<std::size_t>(j)]);
                }
                sum += product;
              }
              out(i) = sum;
            }
            if (spec.field() == Field::Real) out = out.real().cast<Scalar>();
            return out;
          },
          [&](const RotationScalingFamily& f) -> Vector {
            const double c = std::cos(f.theta) * f.lambda;
            const double s = std::sin(f.theta) * f.lambda;
            Vector out(2);
            out(0) = c * x(0) - s * x(1);
            out(1) = s * x(0) + c * x(1);
            return out;
          },
          [&](const CompositeFamily& f) -> Vector {
            Vector v = x;
            for (auto it = f.maps.rbegin(); it != f.maps.rend(); ++it) v = eval_map(*it, v);
            return v;
          },
      },
      spec.family());
}

LiftedMap::LiftedMap(MapSpec spec) : spec_(std::move(spec)) {}

ProjPoint LiftedMap::on_sigma(const ProjPoint& y) const {
  return projectivize_linear_unchecked(d0(), y);
}

BlowupPoint LiftedMap::operator()(const BlowupPoint& p) const {
  if (p.x.size() != spec_.dim()) throw std::invalid_argument("lifted map/point dimension mismatch");
  if (!is_incident(p)) throw std::domain_error("point violates the incidence relation of X");
  if (p.on_sigma()) return sigma_point(on_sigma(p.y));

  Vector image = eval_map(spec_, p.x);
  const Field field = spec_.field();
  if (p.x.norm() <= kNearSigma) {
    const Scalar mu = p.y.homog().dot(p.x);
    const Vector quotient = image / mu;
    if (quotient.allFinite() && quotient.norm() > 0.0) return BlowupPoint{std::move(image), ProjPoint::normalize(field, quotient)};
    return BlowupPoint{std::move(image), on_sigma(p.y)};
  }
  if (image.norm() == 0.0) return BlowupPoint{std::move(image), on_sigma(p.y)};
  ProjPoint fiber = ProjPoint::normalize(field, image);
  return BlowupPoint{std::move(image), std::move(fiber)};
}

std::vector<NamedMap> builtin_maps() {
  const Scalar i{0.0, 1.0};
  Eigen::MatrixXd a3(3, 3);
  a3 << 1.5, 0.3, 0.0, -0.2, 0.8, 0.4, 0.1, 0.0, 2.2;
  Eigen::MatrixXcd c2(2, 2);
  c2 << Scalar(1.2, 0.5), Scalar(0.3, 0.0), Scalar(0.0, -0.4), Scalar(0.7, 0.2);
  std::vector<std::vector<Monomial>> real_poly = {
      {{{1, 0}, 2.0}, {{0, 2}, 1.0}, {{1, 1}, -0.5}},
      {{{0, 1}, 0.5}, {{2, 0}, 0.75}, {{3, 0}, 0.2}},
  };
  std::vector<std::vector<Monomial>> complex_poly = {
      {{{1, 0}, 1.0 + i}, {{0, 2}, i}},
      {{{0, 1}, 2.0}, {{1, 0}, 0.5}, {{1, 1}, 0.3 - 0.1 * i}},
  };
  std::vector<std::vector<Monomial>> poly3 = {
      {{{1, 0, 0}, 1.0}, {{0, 1, 1}, 1.0}},
      {{{0, 1, 0}, 3.0}, {{1, 0, 0}, 1.0}, {{2, 0, 0}, -1.0}},
      {{{0, 0, 1}, 0.5}, {{0, 1, 0}, 0.2}, {{1, 1, 0}, 0.4}},
  };
  const Scalar d2[] = {2.0, 0.5};
  std::vector<NamedMap> out = {
      {"linear_diag", MapSpec::linear(Matrix::diagonal(Field::Real, d2))},
      {"linear_real3", MapSpec::linear(Matrix::from_real(a3))},
      {"linear_complex2", MapSpec::linear(Matrix(Field::Complex, c2))},
      {"paper_example_c1", MapSpec::paper_example_c1()},
      {"kink_shear2", MapSpec::kink_shear(2)},
      {"polynomial_real2", MapSpec::polynomial(Field::Real, 2, real_poly)},
      {"polynomial_complex2", MapSpec::polynomial(Field::Complex, 2, complex_poly)},
      {"polynomial_real3", MapSpec::polynomial(Field::Real, 3, poly3)},
      {"rotation_scaling", MapSpec::rotation_scaling(2.0, std::numbers::pi / 6)},
  };
  out.push_back({"composite", MapSpec::composite({out[8].spec, out[3].spec, out[5].spec})});
  return out;
}

LiftedMap lift_map(const MapSpec& spec) {
  return LiftedMap(spec);
}

namespace {

double relative_incidence(const BlowupPoint& p) {
  return incidence_residual(p.x, p.y) / (1.0 + p.x.norm());
}

}  // namespace

ResidualReport commutation_residuals(const MapSpec& spec, const std::vector<BlowupPoint>& samples, double tol,
                                     Execution exec) {
  const LiftedMap lifted(spec);
  ResidualReport report;
  report.samples = samples.size();
  report.tol = tol;
  report.max_residual = max_over(
      samples.size(),
      [&](std::size_t i) {
        const BlowupPoint& v = samples[i];
        const Vector lhs = blowdown(lifted(v));
        const Vector rhs = eval_map(spec, blowdown(v));
        return (lhs - rhs).norm();
      },
      exec);
  report.max_incidence = max_over(samples.size(), [&](std::size_t i) { return relative_incidence(lifted(samples[i])); },
                                  exec);
  report.passed = report.max_residual <= tol && report.max_incidence <= tol;
  return report;
}

ResidualReport check_commutation(const MapSpec& spec, std::size_t sample_count, double tol, std::uint64_t seed,
                                 Execution exec) {
  const auto samples = sample_blowup_points(spec.field(), spec.dim(), sample_count, seed);
  return commutation_residuals(spec, samples, tol, exec);
}

ResidualReport functoriality_residuals(const MapSpec& g, const MapSpec& h, const std::vector<BlowupPoint>& samples,
                                       double tol, Execution exec) {
  const LiftedMap composite(MapSpec::composite({g, h}));
  const LiftedMap outer(g);
  const LiftedMap inner(h);
  ResidualReport report;
  report.samples = samples.size();
  report.tol = tol;
  report.max_residual = max_over(
      samples.size(),
      [&](std::size_t i) {
        const BlowupPoint a = composite(samples[i]);
        const BlowupPoint b = outer(inner(samples[i]));
        return std::max((a.x - b.x).norm(), proj_dist(a.y, b.y));
      },
      exec);
  report.max_incidence = max_over(samples.size(), [&](std::size_t i) { return relative_incidence(composite(samples[i])); },
                                  exec);
  report.passed = report.max_residual <= tol && report.max_incidence <= tol;
  return report;
}

ResidualReport check_functoriality(const MapSpec& g, const MapSpec& h, std::size_t sample_count, double tol,
                                   std::uint64_t seed, Execution exec) {
  const auto samples = sample_blowup_points(g.field(), g.dim(), sample_count, seed);
  return functoriality_residuals(g, h, samples, tol, exec);
}

}  // namespace blowup
