#pragma once

#include <vector>

#include <Eigen/Core>

#include "qent/error.hpp"

namespace qent {

/// All elementary symmetric polynomials e_0..e_n of the entries of `values`,
/// by expanding prod_i (1 + t v_i) one factor at a time. O(n^2).
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>
elementary_symmetric_all(const Eigen::MatrixBase<Derived> &values) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = values.size();
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n + 1);
  e(0) = Scalar(1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Scalar v = values(i);
    for (Eigen::Index k = i + 1; k >= 1; --k) e(k) += v * e(k - 1);
  }
  return e;
}

/// e_r of the entries of `values`, i.e. the r-th characteristic-polynomial
/// coefficient of a matrix with those eigenvalues. Requires 1 <= r <= n.
template <typename Derived>
typename Derived::Scalar symmetric_coefficient(const Eigen::MatrixBase<Derived> &values, int r) {
  if (r < 1 || r > values.size()) throw Error(ErrorCode::InvalidR, "r outside [1, n]");
  return elementary_symmetric_all(values)(r);
}

} // namespace qent
