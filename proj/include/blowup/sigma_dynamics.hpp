#pragma once

/// \file sigma_dynamics.hpp
/// \brief Dynamics of a lifted map on and near the exceptional locus.
///
/// On Sigma the lift acts as the projectivized derivative P(D); its fixed
/// points are the projectivized geometric eigenspaces P(ker(lambda I - D)).
/// brute_force_fixed_scan recovers the same set from evaluations alone and
/// serves as the independent oracle for fixed_set_on_sigma.

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "blowup/map_lift.hpp"
#include "blowup/sampling.hpp"

namespace blowup {

/// p -> [D p] on P(F^n), with D validated once at construction.
class SigmaMap {
 public:
  explicit SigmaMap(Matrix d0, double tol = kDefaultTol);

  const Matrix& matrix() const { return d0_; }
  Field field() const { return d0_.field(); }
  int dim() const { return d0_.dim(); }
  ProjPoint operator()(const ProjPoint& p) const { return projectivize_linear_unchecked(d0_, p); }

 private:
  Matrix d0_;
};

SigmaMap sigma_map(const Matrix& d0, double tol = kDefaultTol);

struct FixedComponent {
  Scalar lambda;
  /// Projective dimension: geometric multiplicity - 1.
  int proj_dim = 0;
  std::vector<Vector> basis;
  /// Orthonormal columns spanning the eigenspace.
  Eigen::MatrixXcd span;

  std::string description() const;
  bool contains(const ProjPoint& p, double tol) const;
};

struct FixedSetOnSigma {
  Field field = Field::Real;
  std::vector<FixedComponent> components;
  /// Over R: non-real eigenvalues (one per conjugate pair, Im > 0). They fix
  /// no point of Sigma and are listed for diagnostics only.
  std::vector<Scalar> rotational_classes;
};

FixedSetOnSigma fixed_set_on_sigma(const Matrix& d0, double tol = kDefaultTol);

/// A connected cluster of scan hits, represented by its first refined point.
struct ScanCluster {
  ProjPoint representative;
  std::vector<ProjPoint> members;
};

struct ScanResult {
  std::size_t sample_count = 0;
  double grid_spacing = 0.0;
  /// Grid samples whose displacement d(p, F(p)) is at most tol.
  std::size_t fixed_sample_count = 0;
  std::vector<ScanCluster> clusters;
};

/// Evaluation-only search for fixed points of a projective self-map over
/// RP^1 or RP^2: sample a grid, seed a least-squares Newton refinement
/// (finite-difference Jacobian in an affine chart) from every local minimum
/// of the displacement, keep refined points with displacement <= tol, and
/// link hits closer than 10 grid spacings whose geodesic midpoint is also
/// fixed. Throws std::invalid_argument outside real n in {2, 3} or for
/// resolution < 1000.
ScanResult brute_force_fixed_scan(const std::function<ProjPoint(const ProjPoint&)>& map, int n, int resolution,
                                  double tol, Execution exec = Execution::Parallel);

struct OracleComparison {
  std::size_t components = 0;
  std::size_t clusters = 0;
  /// max over scan hits of the distance to the nearest component.
  double max_location_error = 0.0;
  /// Every component received a cluster, and counts agree.
  bool matched = false;
};

/// Assigns each scan cluster to its nearest fixed component.
OracleComparison compare_with_scan(const FixedSetOnSigma& fixed, const ScanResult& scan, double tol);

/// Raised by iterate_orbit; carries the index of the step that failed.
class OrbitError : public std::runtime_error {
 public:
  OrbitError(std::size_t step, const std::string& what);
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

template <class Point>
struct Orbit {
  std::vector<Point> points;
};

/// N + 1 points p, F(p), ..., F^N(p).
template <class Point, class Map>
Orbit<Point> iterate_orbit(const Map& map, const Point& start, std::size_t steps) {
  if (steps < 1) throw std::invalid_argument("orbit needs at least one step");
  Orbit<Point> orbit;
  orbit.points.reserve(steps + 1);
  orbit.points.push_back(start);
  for (std::size_t i = 1; i <= steps; ++i) {
    try {
      orbit.points.push_back(map(orbit.points.back()));
    } catch (const std::exception& e) {
      throw OrbitError(i, e.what());
    }
  }
  return orbit;
}

/// Geometric-mean contraction of distances to target over steps
/// [burn_in, end) of a projective orbit.
double contraction_rate(const Orbit<ProjPoint>& orbit, const ProjPoint& target, std::size_t burn_in);

struct TraceReport {
  /// Orthonormal columns spanning E.
  Eigen::MatrixXcd span;
  /// Where the closure of the lifted subspace meets Sigma: P(E), listed by
  /// its normalized basis directions.
  std::vector<ProjPoint> sigma_meeting;
  /// max over samples of the distance from the fiber to P(E), both for the
  /// lifted points and for their images under the lift.
  double max_deviation = 0.0;
  double max_image_deviation = 0.0;
  std::size_t samples = 0;
};

/// Samples u in E at each scale, lifts them, applies the lifted map, and
/// measures how far the fibers stray from P(E). Throws std::domain_error if
/// E is not D-invariant within tol.
TraceReport invariant_subspace_trace(const MapSpec& spec, std::span<const Vector> subspace,
                                     std::span<const double> scales, double tol = kDefaultTol);

}  // namespace blowup
