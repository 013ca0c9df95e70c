#pragma once

/// \file variant.hpp
/// \brief Conjugacy-induced blowups and the obstruction to lifting
/// homeomorphisms.
///
/// A topological conjugacy phi with phi o h1 = h0 o phi turns the classical
/// blowup of h1 into a blowup of h0 with blowdown phi o q. Its fixed set on
/// Sigma is read off D h1 at the origin, not D h0, so it can be empty,
/// discrete or positive-dimensional for the same h0.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "blowup/sigma_dynamics.hpp"

namespace blowup {

using PointMap = std::function<Vector(const Vector&)>;

/// A homeomorphism of F^n fixing the origin, with its inverse.
struct Conjugacy {
  PointMap forward;
  PointMap inverse;
};

Conjugacy identity_conjugacy();

/// phi(r e^{i a}) = r e^{i (a + theta ln r / ln lambda)}, phi(0) = 0.
/// Conjugates lambda * I to lambda * rotation(theta) on R^2.
/// Throws std::invalid_argument unless lambda > 1.
Conjugacy spiral_conjugacy(double lambda, double theta);

/// max |phi(h1(x)) - h0(phi(x))| / (1 + |x|) over the base points.
double conjugacy_residual(const Conjugacy& phi, const MapSpec& h0, const MapSpec& h1,
                          const std::vector<Vector>& points, Execution exec = Execution::Parallel);

/// Classical blowup of h1, blown down through phi o q.
class VariantBlowup {
 public:
  VariantBlowup(Conjugacy phi, const MapSpec& h1);

  Vector blowdown(const BlowupPoint& p) const;
  BlowupPoint lift(const BlowupPoint& p) const { return lift_(p); }
  const LiftedMap& lifted_map() const { return lift_; }

 private:
  Conjugacy phi_;
  LiftedMap lift_;
};

struct VariantReport {
  std::size_t samples = 0;
  double conjugacy_residual = 0.0;
  /// max |blowdown(lift(v)) - h0(blowdown(v))| over samples on and off Sigma.
  double diagram_residual = 0.0;
  /// Fixed set of the classical blowup of h0 (from D h0).
  FixedSetOnSigma classical;
  /// Fixed set of the variant (from D h1).
  FixedSetOnSigma variant;
  double tol = 0.0;
  bool passed = false;
};

struct VariantResult {
  VariantBlowup blowup;
  VariantReport report;
};

/// Throws std::domain_error when phi fails to conjugate h1 to h0 within tol
/// on the samples.
VariantResult variant_blowup(const MapSpec& h0, const MapSpec& h1, const Conjugacy& phi, std::size_t samples,
                             double tol, std::uint64_t seed, Execution exec = Execution::Parallel);

/// Eigenvalue allocation for D g at a hyperbolic fixed point. One entry per
/// distinct real eigenvalue (its multiplicity); the remaining dimensions of
/// each of E_u, E_s are filled with complex-conjugate pairs.
struct AllocationSpec {
  int dim_unstable = 0;
  int dim_stable = 0;
  std::vector<int> unstable_real;
  std::vector<int> stable_real;

  int n() const { return dim_unstable + dim_stable; }
};

/// Enforce: reject allocations whose stable or unstable dimension is odd
/// (outside the even-dimensional setting in which every allocation comes from
/// a conjugacy). Report: accept any realizable allocation and flag parity.
enum class ParityPolicy { Enforce, Report };

struct PredictedComponent {
  bool unstable = false;
  int multiplicity = 0;
  int proj_dim = 0;
};

struct FixedSetPrediction {
  std::vector<PredictedComponent> components;
  int complex_pairs = 0;
  bool even_dimensions = false;
  /// "empty", "discrete" or "positive_dimensional".
  std::string kind;
};

/// Throws std::invalid_argument for unrealizable allocations (multiplicity
/// < 1, real multiplicities exceeding a subspace, odd remainder for complex
/// pairs, n outside range), and under Enforce for odd subspace dimensions.
FixedSetPrediction predict_fixed_set(const AllocationSpec& alloc, ParityPolicy policy = ParityPolicy::Enforce);

/// Block-diagonal matrix realizing alloc (distinct real eigenvalues repeated
/// as scalar blocks, rotation-scaling blocks for complex pairs), conjugated by
/// a seeded random orthogonal matrix.
Matrix realize_allocation(const AllocationSpec& alloc, std::uint64_t seed);

/// Point of S^1 x (0, inf): an angle and a level.
struct TubePoint {
  double angle = 0.0;
  double level = 0.0;
};

/// Chord distance between angles plus level difference.
double tube_distance(const TubePoint& a, const TubePoint& b);

/// Homeomorphism g of S^1 x (0, inf) with g(from[i]) = to[i], identity on
/// levels <= epsilon: a piecewise-linear level reparametrization matching
/// the knot levels, followed by a level-dependent rotation interpolated
/// linearly between knots along the shortest arc.
class TubeHomeo {
 public:
  /// Throws std::invalid_argument for mismatched sizes, non-increasing
  /// levels, or epsilon >= the first level of either sequence.
  TubeHomeo(std::vector<TubePoint> from, std::vector<TubePoint> to, double epsilon);

  TubePoint forward(const TubePoint& p) const;
  TubePoint inverse(const TubePoint& p) const;
  double epsilon() const { return epsilon_; }

 private:
  double level_forward(double s) const;
  double level_inverse(double t) const;
  double rotation_at(double t) const;

  std::vector<double> src_levels_;  // epsilon, then the source knot levels
  std::vector<double> dst_levels_;  // epsilon, then the target knot levels
  std::vector<double> rotations_;   // rotation at each dst level
  double epsilon_;
};

/// Radii r_1 > r_2 > ... > 0 of the approximating sequences.
struct SequenceSchedule {
  std::vector<double> radii;
};

/// r_i = ratio^i for i = 1..count.
SequenceSchedule geometric_schedule(double ratio, int count);

/// Planar homeomorphism fixing 0 built from a TubeHomeo via t = -ln r.
class PlanarTubeMap {
 public:
  explicit PlanarTubeMap(TubeHomeo tube) : tube_(std::move(tube)) {}

  Vector forward(const Vector& v) const;
  Vector inverse(const Vector& v) const;
  const TubeHomeo& tube() const { return tube_; }

 private:
  Vector apply(const Vector& v, bool invert) const;
  TubeHomeo tube_;
};

struct WitnessReport {
  /// Limits of the odd- and even-indexed fiber images of the forced lift.
  std::vector<ProjPoint> cluster_points;
  double separation = 0.0;
  /// |q(x_N)| at the last index.
  double blowdown_limit_norm = 0.0;
  /// max |q(.)| over the last five indices of x_i and z_i.
  double tail_max_norm = 0.0;
  /// Spread of each parity subsequence around its limit.
  double subsequence_spread = 0.0;
  /// max_i tube_distance(g(x_i), z_i).
  double max_knot_error = 0.0;
  /// max planar |h^-1(h(v)) - v| and |h(h^-1(v)) - v| on sampled annuli.
  double max_roundtrip_error = 0.0;
  std::vector<ProjPoint> fiber_images;
  std::string verdict;
};

struct NoLiftWitness {
  PlanarTubeMap h;
  WitnessReport report;
};

/// Builds sequences x_i -> (0, x) and y_i -> (0, y) off Sigma, the
/// interleaved z_i, and a homeomorphism h of the plane with h(q(x_i)) =
/// q(z_i). The lift of h forced off Sigma sends the convergent x_i to the
/// divergent z_i. Throws std::invalid_argument unless the targets are real
/// planar points at least 0.1 apart and the radii decrease strictly inside
/// (0, 1).
NoLiftWitness no_lift_witness(const ProjPoint& x, const ProjPoint& y, const SequenceSchedule& schedule,
                              double tol = 1e-9);

}  // namespace blowup
