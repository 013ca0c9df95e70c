#pragma once

/// \file linalg.hpp
/// \brief Small dense matrices over R or C and their geometric eigenspaces.
///
/// Everything is stored in complex arithmetic. A real matrix is a complex
/// matrix with identically zero imaginary parts, tagged Field::Real, so the
/// projective and blowup layers can treat both fields uniformly.

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace blowup {

enum class Field { Real, Complex };

std::string_view to_string(Field field);
Field field_from_string(std::string_view text);

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-9;
inline constexpr int kMinDim = 2;
inline constexpr int kMaxDim = 8;

/// True when every entry has zero imaginary part.
bool is_real(const Vector& v);

/// Square matrix of dimension kMinDim..kMaxDim with finite entries.
/// Field::Real matrices have exactly zero imaginary parts.
class Matrix {
 public:
  Matrix(Field field, Eigen::MatrixXcd entries);

  static Matrix from_real(const Eigen::MatrixXd& entries);
  static Matrix identity(Field field, int n);
  static Matrix diagonal(Field field, std::span<const Scalar> values);
  /// Planar rotation by theta (real, 2x2).
  static Matrix rotation(double theta);

  Field field() const { return field_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  Scalar operator()(int row, int col) const { return entries_(row, col); }

  Vector apply(const Vector& v) const;
  Matrix scaled(Scalar factor) const;

  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  Field field_;
  Eigen::MatrixXcd entries_;
};

struct EigenComponent {
  Scalar lambda;
  int geometric_multiplicity = 0;
  /// Orthonormal basis of ker(lambda I - A).
  std::vector<Vector> basis;
};

/// All eigenvalues with algebraic repetition, unclustered.
std::vector<Scalar> eigenvalues(const Matrix& a);

/// Greedy grouping: two values share a cluster when
/// |a - b| <= tol * max(1, |a|, |b|). Returns cluster means.
std::vector<Scalar> cluster_eigenvalues(std::span<const Scalar> values, double tol);

/// Geometric eigenspaces, one per eigenvalue cluster. Over Field::Real only
/// clusters whose imaginary part is negligible are returned, with real bases.
std::vector<EigenComponent> eigen_decompose(const Matrix& a, double tol = kDefaultTol);

double smallest_singular_value(const Matrix& a);
bool is_invertible(const Matrix& a, double tol = kDefaultTol);

/// Orthonormal columns spanning the right singular vectors of m whose
/// singular value is <= threshold.
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& m, double threshold);

/// Orthonormal basis (columns) of span(vectors).
Eigen::MatrixXcd orthonormal_span(std::span<const Vector> vectors, double tol = kDefaultTol);

/// Rank of the matrix whose columns are vectors, with relative threshold tol.
int column_rank(std::span<const Vector> vectors, double tol = kDefaultTol);

}  // namespace blowup
