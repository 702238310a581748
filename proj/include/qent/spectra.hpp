#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qent {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kNegativeEigTol = 1e-10;
inline constexpr double kDefaultClusterTol = 1e-9;
inline constexpr double kZeroEigenvalue = 1e-14;

/// Eigenvalues of a density matrix: nonnegative, unit sum, sorted nonincreasing.
class Spectrum {
public:
  /// Validates and canonicalizes (sorts descending). Entries in
  /// (-1e-10, 0) are clamped to zero; a sum off by less than 1e-10 is
  /// renormalized away. Throws Error(InvalidSpectrum) otherwise.
  static Spectrum from_values(std::span<const double> values,
                              double cluster_tol = kDefaultClusterTol);
  static Spectrum from_values(std::initializer_list<double> values,
                              double cluster_tol = kDefaultClusterTol) {
    return from_values(std::span<const double>(values.begin(), values.size()), cluster_tol);
  }

  static Spectrum uniform(std::size_t n);
  static Spectrum pure(std::size_t n);

  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }
  const Eigen::VectorXd &values() const noexcept { return values_; }
  double cluster_tolerance() const noexcept { return cluster_tol_; }

  /// Smallest eigenvalue above the zero threshold.
  double min_nonzero() const noexcept;
  std::size_t rank() const noexcept;

private:
  Spectrum(Eigen::VectorXd values, double tol) : values_(std::move(values)), cluster_tol_(tol) {}

  Eigen::VectorXd values_;
  double cluster_tol_;
};

struct SpectrumNode {
  double value;
  int multiplicity;
};

/// Distinct eigenvalues with multiplicities, descending by value. Values below
/// kZeroEigenvalue collapse into one node with value exactly 0.
struct ClusteredSpectrum {
  std::vector<SpectrumNode> nodes;

  int dimension() const noexcept;
};

/// Validated n x n Hermitian, PSD, unit-trace matrix together with its spectrum.
class DensityMatrix {
public:
  const Eigen::MatrixXcd &matrix() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  const Spectrum &spectrum() const noexcept { return spectrum_; }

private:
  friend DensityMatrix validate_density_matrix(const Eigen::MatrixXcd &raw);
  DensityMatrix(Eigen::MatrixXcd m, Spectrum s) : m_(std::move(m)), spectrum_(std::move(s)) {}

  Eigen::MatrixXcd m_;
  Spectrum spectrum_;
};

/// Symmetrizes the input when it is Hermitian to within 1e-12, then checks
/// trace and positivity. Throws Error with EmptyMatrix, NotHermitian,
/// TraceNotOne or NotPSD.
DensityMatrix validate_density_matrix(const Eigen::MatrixXcd &raw);

Spectrum eigenvalues(const DensityMatrix &rho);

ClusteredSpectrum cluster(const Spectrum &s);

Spectrum pad_with_zeros(const Spectrum &s, std::size_t m);

Spectrum tensor_spectrum(const Spectrum &a, const Spectrum &b);

} // namespace qent
