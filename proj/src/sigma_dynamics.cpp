#include "blowup/sigma_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

namespace blowup {

SigmaMap::SigmaMap(Matrix d0, double tol) : d0_(std::move(d0)) {
  if (!is_invertible(d0_, tol)) throw std::domain_error("projectivized map needs an invertible matrix");
}

SigmaMap sigma_map(const Matrix& d0, double tol) {
  return SigmaMap(d0, tol);
}

std::string FixedComponent::description() const {
  std::ostringstream out;
  out << "P(E_lambda) = P(F^" << proj_dim + 1 << ")";
  return out.str();
}

bool FixedComponent::contains(const ProjPoint& p, double tol) const {
  return dist_to_subspace(p, span) <= tol;
}

FixedSetOnSigma fixed_set_on_sigma(const Matrix& d0, double tol) {
  if (!is_invertible(d0, tol)) throw std::domain_error("fixed set needs an invertible derivative");
  FixedSetOnSigma out;
  out.field = d0.field();
  for (EigenComponent& e : eigen_decompose(d0, tol)) {
    FixedComponent c;
    c.lambda = e.lambda;
    c.proj_dim = e.geometric_multiplicity - 1;
    c.span = orthonormal_span(e.basis, tol);
    c.basis = std::move(e.basis);
    out.components.push_back(std::move(c));
  }
  if (d0.field() == Field::Real) {
    const auto values = eigenvalues(d0);
    for (Scalar z : cluster_eigenvalues(values, tol)) {
      if (z.imag() > tol * std::max(1.0, std::abs(z))) out.rotational_classes.push_back(z);
    }
  }
  return out;
}

OrbitError::OrbitError(std::size_t step, const std::string& what)
    : std::runtime_error("orbit evaluation failed at step " + std::to_string(step) + ": " + what), step_(step) {}

double contraction_rate(const Orbit<ProjPoint>& orbit, const ProjPoint& target, std::size_t burn_in) {
  const std::size_t last = orbit.points.size() - 1;
  if (burn_in >= last) throw std::invalid_argument("burn-in leaves no steps to measure");
  const double first = proj_dist(orbit.points[burn_in], target);
  const double final = proj_dist(orbit.points[last], target);
  return std::pow(final / first, 1.0 / static_cast<double>(last - burn_in));
}

namespace {

struct Grid {
  std::vector<Eigen::VectorXd> points;
  std::vector<std::vector<std::size_t>> neighbors;
  double spacing = 0.0;
};

Grid circle_grid(int resolution) {
  Grid g;
  const double h = std::numbers::pi / resolution;
  g.spacing = h;
  for (int i = 0; i < resolution; ++i) {
    const double angle = (i + 0.5) * h;
    Eigen::VectorXd v(2);
    v << std::cos(angle), std::sin(angle);
    g.points.push_back(v);
    const auto prev = static_cast<std::size_t>((i + resolution - 1) % resolution);
    const auto next = static_cast<std::size_t>((i + 1) % resolution);
    g.neighbors.push_back({prev, next});
  }
  return g;
}

// Upper hemisphere in (polar, azimuth) with half-offset polar rows. Stepping
// past the pole or the equator continues on the antipodal azimuth, which is
// the same point of RP^2.
Grid hemisphere_grid(int resolution) {
  Grid g;
  const int rows = std::max(2, static_cast<int>(std::lround(std::sqrt(resolution / 2.0))));
  int cols = (resolution + rows - 1) / rows;
  if (cols % 2 == 1) ++cols;
  const double dpolar = (std::numbers::pi / 2.0) / rows;
  const double dazimuth = 2.0 * std::numbers::pi / cols;
  g.spacing = std::max(dpolar, dazimuth);
  auto index = [&](int r, int c) { return static_cast<std::size_t>(r * cols + ((c % cols) + cols) % cols); };
  for (int r = 0; r < rows; ++r) {
    const double polar = (r + 0.5) * dpolar;
    for (int c = 0; c < cols; ++c) {
      const double azimuth = c * dazimuth;
      Eigen::VectorXd v(3);
      v << std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar);
      g.points.push_back(v);
      std::vector<std::size_t> nb;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          int rr = r + dr;
          int cc = c + dc;
          if (rr < 0) {
            rr = 0;
            cc += cols / 2;
          } else if (rr >= rows) {
            rr = rows - 1;
            cc += cols / 2;
          }
          nb.push_back(index(rr, cc));
        }
      }
      g.neighbors.push_back(std::move(nb));
    }
  }
  return g;
}

using ProjMap = std::function<ProjPoint(const ProjPoint&)>;

double displacement(const ProjMap& map, const ProjPoint& p) {
  return proj_dist(p, map(p));
}

// Least-squares Newton on r(s) = chart(F(p0 + E s)) - s in the affine chart
// centred at p0, with a finite-difference Jacobian.
std::optional<ProjPoint> refine(const ProjMap& map, const Eigen::VectorXd& seed) {
  const auto n = seed.size();
  const Eigen::VectorXd p0 = seed.normalized();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(p0);
  const Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd complement = q.rightCols(n - 1);

  auto residual = [&](const Eigen::VectorXd& s, Eigen::VectorXd& out) {
    const Eigen::VectorXd point = p0 + complement * s;
    const ProjPoint image = map(ProjPoint::normalize(point));
    const Eigen::VectorXd w = image.homog().real();
    const double pivot = p0.dot(w);
    if (std::abs(pivot) < 1e-8) return false;
    out = complement.transpose() * w / pivot - s;
    return out.allFinite();
  };

  Eigen::VectorXd s = Eigen::VectorXd::Zero(n - 1);
  Eigen::VectorXd r;
  if (!residual(s, r)) return std::nullopt;
  constexpr double kFdStep = 1e-7;
  for (int iter = 0; iter < 60 && r.norm() > 1e-15; ++iter) {
    Eigen::MatrixXd jac(n - 1, n - 1);
    for (Eigen::Index k = 0; k < n - 1; ++k) {
      Eigen::VectorXd plus = s, minus = s, rp, rm;
      plus(k) += kFdStep;
      minus(k) -= kFdStep;
      if (!residual(plus, rp) || !residual(minus, rm)) return std::nullopt;
      jac.col(k) = (rp - rm) / (2.0 * kFdStep);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullU | Eigen::ComputeFullV);
    svd.setThreshold(1e-10);
    const Eigen::VectorXd step = -svd.solve(r);
    double t = 1.0;
    bool improved = false;
    for (int halving = 0; halving < 20; ++halving, t *= 0.5) {
      Eigen::VectorXd trial = s + t * step, rt;
      if (trial.norm() > 1.0) continue;
      if (residual(trial, rt) && rt.norm() < r.norm()) {
        s = trial;
        r = rt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return ProjPoint::normalize(Eigen::VectorXd(p0 + complement * s));
}

bool geodesic_fixed(const ProjMap& map, const Eigen::VectorXd& a, Eigen::VectorXd b, double tol) {
  if (a.dot(b) < 0.0) b = -b;
  const double omega = std::acos(std::min(1.0, a.dot(b)));
  if (omega < 1e-12) return true;
  constexpr int kProbes = 16;
  for (int k = 1; k < kProbes; ++k) {
    const double s = static_cast<double>(k) / kProbes;
    const Eigen::VectorXd p = (std::sin((1.0 - s) * omega) * a + std::sin(s * omega) * b) / std::sin(omega);
    if (displacement(map, ProjPoint::normalize(p)) > tol) return false;
  }
  return true;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

ScanResult brute_force_fixed_scan(const ProjMap& map, int n, int resolution, double tol, Execution exec) {
  if (n != 2 && n != 3) throw std::invalid_argument("brute-force scan supports RP^1 and RP^2 only");
  if (resolution < 1000) throw std::invalid_argument("brute-force scan needs at least 1000 samples");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  const Grid grid = n == 2 ? circle_grid(resolution) : hemisphere_grid(resolution);
  ScanResult result;
  result.sample_count = grid.points.size();
  result.grid_spacing = grid.spacing;

  const auto disp = map_over<double>(
      grid.points.size(), [&](std::size_t i) { return displacement(map, ProjPoint::normalize(grid.points[i])); },
      exec);
  result.fixed_sample_count =
      static_cast<std::size_t>(std::count_if(disp.begin(), disp.end(), [&](double d) { return d <= tol; }));

  std::vector<std::size_t> seeds;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const bool local_min = std::all_of(grid.neighbors[i].begin(), grid.neighbors[i].end(),
                                       [&](std::size_t j) { return disp[i] <= disp[j]; });
    if (local_min) seeds.push_back(i);
  }

  const auto refined = map_over<std::optional<ProjPoint>>(
      seeds.size(),
      [&](std::size_t k) -> std::optional<ProjPoint> {
        const std::size_t i = seeds[k];
        if (disp[i] <= 1e-15) return ProjPoint::normalize(grid.points[i]);
        auto p = refine(map, grid.points[i]);
        if (p && displacement(map, *p) <= tol) return p;
        return std::nullopt;
      },
      exec);

  std::vector<ProjPoint> hits;
  for (const auto& p : refined) {
    if (p) hits.push_back(*p);
  }
  if (hits.empty()) return result;

  Eigen::MatrixXd reps(n, static_cast<Eigen::Index>(hits.size()));
  for (std::size_t k = 0; k < hits.size(); ++k) reps.col(static_cast<Eigen::Index>(k)) = hits[k].homog().real();
  const double link_radius = 10.0 * grid.spacing;
  const double same_point_cos = std::cos(1e-7);
  const double link_cos = std::cos(link_radius);

  DisjointSets sets(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const Eigen::VectorXd overlaps = (reps.transpose() * reps.col(static_cast<Eigen::Index>(i))).cwiseAbs();
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      const double c = overlaps(static_cast<Eigen::Index>(j));
      if (c < link_cos) continue;
      if (sets.find(i) == sets.find(j)) continue;
      if (c >= same_point_cos || displacement(map, proj_midpoint(hits[i], hits[j])) <= tol) sets.unite(i, j);
    }
  }

  // Hits of one positive-dimensional component can sit farther apart than
  // the link radius; join clusters whose connecting geodesic is fixed.
  std::vector<std::size_t> roots;
  for (std::size_t i = 0; i < hits.size(); ++i) {
    if (sets.find(i) == i) roots.push_back(i);
  }
  for (std::size_t a = 0; a < roots.size(); ++a) {
    for (std::size_t b = a + 1; b < roots.size(); ++b) {
      if (sets.find(roots[a]) == sets.find(roots[b])) continue;
      if (geodesic_fixed(map, reps.col(static_cast<Eigen::Index>(roots[a])),
                         reps.col(static_cast<Eigen::Index>(roots[b])), tol)) {
        sets.unite(roots[a], roots[b]);
      }
    }
  }

  std::vector<std::size_t> root_to_cluster(hits.size(), hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) {
    const std::size_t root = sets.find(i);
    if (root_to_cluster[root] == hits.size()) {
      root_to_cluster[root] = result.clusters.size();
      result.clusters.push_back(ScanCluster{hits[i], {}});
    }
    result.clusters[root_to_cluster[root]].members.push_back(hits[i]);
  }
  return result;
}

TraceReport invariant_subspace_trace(const MapSpec& spec, std::span<const Vector> subspace,
                                     std::span<const double> scales, double tol) {
  if (subspace.empty()) throw std::invalid_argument("subspace needs at least one basis vector");
  const Matrix& d0 = spec.derivative();
  TraceReport report;
  report.span = orthonormal_span(subspace, tol);
  const Eigen::MatrixXcd& q = report.span;
  const Eigen::MatrixXcd image = d0.entries() * q;
  const double leak = (image - q * (q.adjoint() * image)).norm();
  if (leak > tol * std::max(1.0, d0.entries().norm())) {
    throw std::domain_error("subspace is not invariant under the derivative at the origin");
  }
  for (Eigen::Index k = 0; k < q.cols(); ++k) report.sigma_meeting.push_back(ProjPoint::normalize(spec.field(), q.col(k)));

  std::vector<Vector> directions;
  for (Eigen::Index k = 0; k < q.cols(); ++k) directions.emplace_back(q.col(k));
  if (q.cols() > 1) directions.emplace_back(q.rowwise().sum().normalized());

  const LiftedMap lifted(spec);
  for (const Vector& dir : directions) {
    const BlowupPoint on_sigma = lifted(sigma_point(ProjPoint::normalize(spec.field(), dir)));
    report.max_image_deviation = nan_max(report.max_image_deviation, dist_to_subspace(on_sigma.y, q));
    for (const double scale : scales) {
      for (const double sign : {1.0, -1.0}) {
        const BlowupPoint v = lift_point(Vector(sign * scale * dir), spec.field());
        report.max_deviation = nan_max(report.max_deviation, dist_to_subspace(bundle_projection(v), q));
        report.max_image_deviation = nan_max(report.max_image_deviation, dist_to_subspace(lifted(v).y, q));
        ++report.samples;
      }
    }
  }
  return report;
}

OracleComparison compare_with_scan(const FixedSetOnSigma& fixed, const ScanResult& scan, double tol) {
  OracleComparison cmp;
  cmp.components = fixed.components.size();
  cmp.clusters = scan.clusters.size();
  std::vector<int> hits(fixed.components.size(), 0);
  for (const auto& cluster : scan.clusters) {
    if (fixed.components.empty()) {
      cmp.max_location_error = std::numeric_limits<double>::infinity();
      break;
    }
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < fixed.components.size(); ++c) {
      const double d = dist_to_subspace(cluster.representative, fixed.components[c].span);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    ++hits[best];
    for (const auto& m : cluster.members) {
      cmp.max_location_error = std::max(cmp.max_location_error, dist_to_subspace(m, fixed.components[best].span));
    }
    cmp.max_location_error = std::max(cmp.max_location_error, best_d);
  }
  cmp.matched = cmp.components == cmp.clusters && cmp.max_location_error <= tol;
  for (int h : hits) cmp.matched = cmp.matched && h == 1;
  return cmp;
}

}  // namespace blowup
