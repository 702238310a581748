#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

#include <Eigen/Dense>

#include "qent/error.hpp"

namespace qent {

namespace detail {
template <typename T> struct is_complex : std::false_type {};
template <typename T> struct is_complex<std::complex<T>> : std::true_type {};
} // namespace detail

/// Eigenvalues of a Hermitian (or real symmetric) matrix by cyclic Jacobi
/// rotations. Complex off-diagonal entries are first rotated onto the real
/// axis by a diagonal phase, then annihilated with a real Givens rotation.
/// Stops once the off-diagonal Frobenius norm falls below
/// rel_tol * ||A||_F; throws Error(NoConvergence) after max_sweeps.
///
/// Returned unsorted, in diagonal order.
template <typename Derived>
Eigen::Matrix<typename Eigen::NumTraits<typename Derived::Scalar>::Real, Eigen::Dynamic, 1>
hermitian_jacobi_eigenvalues(const Eigen::MatrixBase<Derived> &input, double rel_tol = 1e-14,
                             int max_sweeps = 100) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Matrix a = input;
  const Eigen::Index n = a.rows();
  const Real total = a.norm();
  auto off_norm = [&] {
    Real acc = 0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) acc += std::norm(a(i, j));
    return std::sqrt(acc);
  };

  int sweep = 0;
  while (off_norm() > Real(rel_tol) * total) {
    if (++sweep > max_sweeps)
      throw Error(ErrorCode::NoConvergence, "Jacobi iteration exceeded sweep limit");
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Real g = std::abs(a(p, q));
        if (g == Real(0)) continue;
        if constexpr (detail::is_complex<Scalar>::value) {
          const Scalar phase = a(p, q) / g;
          a.col(q) *= std::conj(phase);
          a.row(q) *= phase;
          a(p, q) = g;
          a(q, p) = g;
        }
        const Real app = std::real(a(p, p));
        const Real aqq = std::real(a(q, q));
        const Real tau = (aqq - app) / (Real(2) * g);
        const Real t = (tau >= 0 ? Real(1) : Real(-1)) / (std::abs(tau) + std::sqrt(Real(1) + tau * tau));
        const Real c = Real(1) / std::sqrt(Real(1) + t * t);
        const Real s = t * c;

        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar akp = a(k, p);
          const Scalar akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Scalar apk = a(p, k);
          const Scalar aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = Scalar(0);
        a(q, p) = Scalar(0);
      }
    }
  }
  return a.diagonal().real();
}

} // namespace qent
