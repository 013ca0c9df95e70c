#include "blowup/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace blowup {

std::string_view to_string(Field field) {
  return field == Field::Real ? "R" : "C";
}

Field field_from_string(std::string_view text) {
  if (text == "R" || text == "real" || text == "Real") return Field::Real;
  if (text == "C" || text == "complex" || text == "Complex") return Field::Complex;
  throw std::invalid_argument("unknown field '" + std::string(text) + "' (expected R or C)");
}

bool is_real(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i).imag() != 0.0) return false;
  }
  return true;
}

Matrix::Matrix(Field field, Eigen::MatrixXcd entries) : field_(field), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("matrix must be square");
  }
  const auto n = entries_.rows();
  if (n < kMinDim || n > kMaxDim) {
    throw std::invalid_argument("matrix dimension " + std::to_string(n) + " outside supported range [" +
                                std::to_string(kMinDim) + ", " + std::to_string(kMaxDim) + "]");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const Scalar z = entries_(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("matrix entries must be finite");
      }
      if (field_ == Field::Real && z.imag() != 0.0) {
        throw std::invalid_argument("real matrix has a nonzero imaginary part");
      }
    }
  }
}

Matrix Matrix::from_real(const Eigen::MatrixXd& entries) {
  return Matrix(Field::Real, entries.cast<Scalar>());
}

Matrix Matrix::identity(Field field, int n) {
  return Matrix(field, Eigen::MatrixXcd::Identity(n, n));
}

Matrix Matrix::diagonal(Field field, std::span<const Scalar> values) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(values.size()),
                                              static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return Matrix(field, std::move(m));
}

Matrix Matrix::rotation(double theta) {
  Eigen::MatrixXd r(2, 2);
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return from_real(r);
}

Vector Matrix::apply(const Vector& v) const {
  if (v.size() != entries_.rows()) throw std::invalid_argument("vector/matrix dimension mismatch");
  return entries_ * v;
}

Matrix Matrix::scaled(Scalar factor) const {
  const Field f = (field_ == Field::Real && factor.imag() == 0.0) ? Field::Real : Field::Complex;
  return Matrix(f, entries_ * factor);
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("matrix product dimension mismatch");
  if (a.field() != b.field()) throw std::invalid_argument("matrix product field mismatch");
  return Matrix(a.field(), a.entries() * b.entries());
}

std::vector<Scalar> eigenvalues(const Matrix& a) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a.entries(), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalue iteration did not converge");
  const auto& ev = solver.eigenvalues();
  std::vector<Scalar> out(ev.data(), ev.data() + ev.size());
  if (a.field() == Field::Real) {
    // Conjugate pairs of a real matrix: snap tiny imaginary parts produced by
    // the complex QR iteration so clustering sees exact reals.
    const double scale = std::max(1.0, a.entries().norm());
    for (auto& z : out) {
      if (std::abs(z.imag()) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) z.imag(0.0);
    }
  }
  return out;
}

std::vector<Scalar> cluster_eigenvalues(std::span<const Scalar> values, double tol) {
  std::vector<std::vector<Scalar>> clusters;
  for (const Scalar z : values) {
    bool placed = false;
    for (auto& c : clusters) {
      const Scalar rep = c.front();
      if (std::abs(z - rep) <= tol * std::max({1.0, std::abs(z), std::abs(rep)})) {
        c.push_back(z);
        placed = true;
        break;
      }
    }
    if (!placed) clusters.push_back({z});
  }
  std::vector<Scalar> means;
  means.reserve(clusters.size());
  for (const auto& c : clusters) {
    Scalar sum = 0.0;
    for (const Scalar z : c) sum += z;
    means.push_back(sum / static_cast<double>(c.size()));
  }
  // Deterministic order: by real part, then imaginary part.
  std::sort(means.begin(), means.end(), [](Scalar a, Scalar b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return means;
}

Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& m, double threshold) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= threshold) cols.push_back(i);
  }
  Eigen::MatrixXcd out(m.cols(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(cols[k]);
  return out;
}

namespace {

// Kernel of lambda I - A. Always returns at least the least-singular direction:
// lambda is an eigenvalue, so the exact kernel is never trivial.
Eigen::MatrixXcd eigenspace(const Matrix& a, Scalar lambda, double tol) {
  const auto n = a.dim();
  const double threshold = tol * (1.0 + std::abs(lambda));
  if (a.field() == Field::Real) {
    Eigen::MatrixXd shifted = lambda.real() * Eigen::MatrixXd::Identity(n, n) - a.entries().real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
      if (sv(i) <= threshold) cols.push_back(i);
    }
    if (cols.empty()) cols.push_back(sv.size() - 1);
    Eigen::MatrixXcd out(n, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) {
      out.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(cols[k]).cast<Scalar>();
    }
    return out;
  }
  Eigen::MatrixXcd shifted = lambda * Eigen::MatrixXcd::Identity(n, n) - a.entries();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(shifted, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<Eigen::Index> cols;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) <= threshold) cols.push_back(i);
  }
  if (cols.empty()) cols.push_back(sv.size() - 1);
  Eigen::MatrixXcd out(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(cols[k]);
  return out;
}

}  // namespace

std::vector<EigenComponent> eigen_decompose(const Matrix& a, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  const auto values = eigenvalues(a);
  const auto clusters = cluster_eigenvalues(values, tol);
  std::vector<EigenComponent> out;
  for (Scalar lambda : clusters) {
    if (a.field() == Field::Real) {
      if (std::abs(lambda.imag()) > tol * std::max(1.0, std::abs(lambda))) continue;
      lambda.imag(0.0);
    }
    const Eigen::MatrixXcd basis = eigenspace(a, lambda, tol);
    EigenComponent c;
    c.lambda = lambda;
    c.geometric_multiplicity = static_cast<int>(basis.cols());
    for (Eigen::Index k = 0; k < basis.cols(); ++k) c.basis.emplace_back(basis.col(k));
    out.push_back(std::move(c));
  }
  return out;
}

double smallest_singular_value(const Matrix& a) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a.entries());
  return svd.singularValues()(svd.singularValues().size() - 1);
}

bool is_invertible(const Matrix& a, double tol) {
  return smallest_singular_value(a) > tol;
}

Eigen::MatrixXcd orthonormal_span(std::span<const Vector> vectors, double tol) {
  if (vectors.empty()) return {};
  const auto n = vectors.front().size();
  Eigen::MatrixXcd stacked(n, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t k = 0; k < vectors.size(); ++k) stacked.col(static_cast<Eigen::Index>(k)) = vectors[k];
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cutoff = tol * std::max(1.0, sv(0));
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cutoff) ++rank;
  return svd.matrixU().leftCols(rank);
}

int column_rank(std::span<const Vector> vectors, double tol) {
  return static_cast<int>(orthonormal_span(vectors, tol).cols());
}

}  // namespace blowup
