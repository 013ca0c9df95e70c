#pragma once

#include <complex>

#include "blowup/linalg.hpp"

namespace testing_helpers {

using cd = std::complex<double>;

inline blowup::Vector vec(std::initializer_list<cd> xs) {
  blowup::Vector v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cd x : xs) v(i++) = x;
  return v;
}

inline blowup::Matrix real_matrix(int n, std::initializer_list<double> rowmajor) {
  Eigen::MatrixXd m(n, n);
  auto it = rowmajor.begin();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = *it++;
  return blowup::Matrix::from_real(m);
}

}  // namespace testing_helpers
