#pragma once

/// \file map_lift.hpp
/// \brief Self-maps of F^n fixing the origin and their lifts to X.
///
/// A map h with invertible derivative D at 0 lifts to X by
///   (x, [x]) -> (h(x), [h(x)])   off Sigma,
///   (0, [y]) -> (0, [D y])        on Sigma.
/// Maps come from a closed catalog of families, each with an analytic
/// derivative at the origin.

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "blowup/blowup_model.hpp"
#include "blowup/sampling.hpp"

namespace blowup {

/// Smoothness order used for C^infinity families.
inline constexpr int kSmoothInfinity = std::numeric_limits<int>::max();

/// Within this base norm (but off Sigma) the fiber image is computed from the
/// difference quotient h(mu u) / mu along the stored direction u.
inline constexpr double kNearSigma = 1e-13;

class MapSpec;

struct LinearFamily {
  Matrix matrix;
};

/// h(x, y) = (x + x^k |x|, y) on R^2. Order 1 is x + x|x|, the C^1 map that is
/// not C^2; order k is C^k but not C^(k+1).
struct KinkShearFamily {
  int order = 1;
};

struct Monomial {
  std::vector<int> exponents;
  Scalar coeff;
};

/// One list of monomials per output coordinate; no constant terms.
struct PolynomialFamily {
  std::vector<std::vector<Monomial>> coordinates;
};

/// lambda * rotation(theta) on R^2.
struct RotationScalingFamily {
  double lambda = 1.0;
  double theta = 0.0;
};

/// maps[0] o maps[1] o ... o maps.back().
struct CompositeFamily {
  std::vector<MapSpec> maps;
};

using MapFamily = std::variant<LinearFamily, KinkShearFamily, PolynomialFamily, RotationScalingFamily, CompositeFamily>;

/// Immutable, cheap to copy. Construction validates that h(0) = 0 and that the
/// derivative at the origin is invertible.
class MapSpec {
 public:
  static MapSpec linear(Matrix matrix);
  static MapSpec paper_example_c1() { return kink_shear(1); }
  static MapSpec kink_shear(int order);
  static MapSpec polynomial(Field field, int n, std::vector<std::vector<Monomial>> coordinates);
  static MapSpec rotation_scaling(double lambda, double theta);
  static MapSpec composite(std::vector<MapSpec> maps);

  Field field() const { return field_; }
  int dim() const { return dim_; }
  int smoothness_order() const { return smoothness_; }
  const MapFamily& family() const { return *family_; }
  std::string_view family_name() const;
  /// Analytic derivative at the origin.
  const Matrix& derivative() const { return *derivative_; }

 private:
  MapSpec(Field field, int dim, int smoothness, MapFamily family, Matrix derivative);

  Field field_;
  int dim_;
  int smoothness_;
  std::shared_ptr<const MapFamily> family_;
  std::shared_ptr<const Matrix> derivative_;
};

Matrix derivative_at_origin(const MapSpec& spec);

struct NamedMap {
  std::string name;
  MapSpec spec;
};

/// One or more representatives of every family, over R and C, in
/// dimensions 2 and 3.
std::vector<NamedMap> builtin_maps();

/// h(x). Exactly zero at x = 0 for every family.
Vector eval_map(const MapSpec& spec, const Vector& x);

/// The induced map on X.
class LiftedMap {
 public:
  explicit LiftedMap(MapSpec spec);

  const MapSpec& base() const { return spec_; }
  const Matrix& d0() const { return spec_.derivative(); }

  /// Throws std::domain_error if p is not on X.
  BlowupPoint operator()(const BlowupPoint& p) const;
  /// Restriction to Sigma: [y] -> [D y].
  ProjPoint on_sigma(const ProjPoint& y) const;

 private:
  MapSpec spec_;
};

LiftedMap lift_map(const MapSpec& spec);

struct ResidualReport {
  std::size_t samples = 0;
  /// Commutation: max |q(h^(v)) - h(q(v))|. Functoriality: max over base
  /// distance and fiber proj_dist.
  double max_residual = 0.0;
  /// Max incidence residual of outputs, relative to 1 + |x|.
  double max_incidence = 0.0;
  double tol = 0.0;
  bool passed = false;
};

/// q o h^ against h o q on the given points of X.
ResidualReport commutation_residuals(const MapSpec& spec, const std::vector<BlowupPoint>& samples, double tol,
                                     Execution exec = Execution::Parallel);

/// Seeded version: mixed samples on and off Sigma.
ResidualReport check_commutation(const MapSpec& spec, std::size_t sample_count, double tol, std::uint64_t seed,
                                 Execution exec = Execution::Parallel);

/// lift(g o h) against lift(g) o lift(h).
ResidualReport functoriality_residuals(const MapSpec& g, const MapSpec& h, const std::vector<BlowupPoint>& samples,
                                       double tol, Execution exec = Execution::Parallel);

ResidualReport check_functoriality(const MapSpec& g, const MapSpec& h, std::size_t sample_count, double tol,
                                   std::uint64_t seed, Execution exec = Execution::Parallel);

}  // namespace blowup
