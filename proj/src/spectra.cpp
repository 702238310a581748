#include "qent/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "qent/error.hpp"
#include "qent/jacobi.hpp"

namespace qent {

namespace {

std::vector<double> canonicalize(std::vector<double> v) {
  if (v.empty())
    throw Error(ErrorCode::InvalidSpectrum, "spectrum must have at least one value");
  for (double &x : v) {
    if (!std::isfinite(x))
      throw Error(ErrorCode::InvalidSpectrum, "spectrum contains a non-finite value");
    if (x < -kNegativeEigTol) {
      std::ostringstream os;
      os << "eigenvalue " << x << " is negative beyond tolerance";
      throw Error(ErrorCode::InvalidSpectrum, os.str());
    }
    x = std::clamp(x, 0.0, 1.0);
  }
  const double sum = std::accumulate(v.begin(), v.end(), 0.0);
  if (std::abs(sum - 1.0) > kTraceTol) {
    std::ostringstream os;
    os.precision(17);
    os << "eigenvalues sum to " << sum << ", not 1";
    throw Error(ErrorCode::InvalidSpectrum, os.str());
  }
  if (sum != 1.0)
    for (double &x : v) x /= sum;
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return v;
}

} // namespace

Spectrum Spectrum::from_values(std::span<const double> values, double cluster_tol) {
  if (!(cluster_tol >= 0.0))
    throw Error(ErrorCode::InvalidSpectrum, "cluster tolerance must be nonnegative");
  const std::vector<double> v = canonicalize(std::vector<double>(values.begin(), values.end()));
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  std::copy(v.begin(), v.end(), out.data());
  return Spectrum(std::move(out), cluster_tol);
}

Spectrum Spectrum::uniform(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidSpectrum, "dimension must be positive");
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  return from_values(std::span<const double>(v));
}

Spectrum Spectrum::pure(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidSpectrum, "dimension must be positive");
  std::vector<double> v(n, 0.0);
  v[0] = 1.0;
  return from_values(std::span<const double>(v));
}

double Spectrum::min_nonzero() const noexcept {
  double best = 0.0;
  for (Eigen::Index i = 0; i < values_.size(); ++i)
    if (values_[i] >= kZeroEigenvalue) best = values_[i];
  return best;
}

std::size_t Spectrum::rank() const noexcept {
  return static_cast<std::size_t>((values_.array() >= kZeroEigenvalue).count());
}

int ClusteredSpectrum::dimension() const noexcept {
  int n = 0;
  for (const auto &node : nodes) n += node.multiplicity;
  return n;
}

DensityMatrix validate_density_matrix(const Eigen::MatrixXcd &raw) {
  if (raw.size() == 0) throw Error(ErrorCode::EmptyMatrix, "density matrix is empty");
  if (raw.rows() != raw.cols())
    throw Error(ErrorCode::EmptyMatrix, "density matrix must be square");

  const double asym = (raw - raw.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    std::ostringstream os;
    os << "max |M - M^H| = " << asym << " exceeds " << kHermitianTol;
    throw Error(ErrorCode::NotHermitian, os.str());
  }
  Eigen::MatrixXcd m = (raw + raw.adjoint()) / 2.0;

  const double trace = m.trace().real();
  if (std::abs(trace - 1.0) > kTraceTol) {
    std::ostringstream os;
    os.precision(17);
    os << "trace " << trace << " differs from 1";
    throw Error(ErrorCode::TraceNotOne, os.str());
  }

  Eigen::VectorXd eig = hermitian_jacobi_eigenvalues(m);
  const double lowest = eig.minCoeff();
  if (lowest < -kNegativeEigTol) {
    std::ostringstream os;
    os << "eigenvalue " << lowest << " is below " << -kNegativeEigTol;
    throw Error(ErrorCode::NotPSD, os.str());
  }
  for (auto &x : eig) x = std::clamp(x, 0.0, 1.0);
  const double sum = eig.sum();
  if (std::abs(sum - 1.0) < kTraceTol) eig /= sum;
  std::vector<double> v(eig.data(), eig.data() + eig.size());
  return DensityMatrix(std::move(m), Spectrum::from_values(std::span<const double>(v)));
}

Spectrum eigenvalues(const DensityMatrix &rho) { return rho.spectrum(); }

ClusteredSpectrum cluster(const Spectrum &s) {
  ClusteredSpectrum out;
  const double tol = s.cluster_tolerance();
  double running_sum = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s[i];
    if (x < kZeroEigenvalue) {
      if (!out.nodes.empty() && out.nodes.back().value == 0.0) {
        ++out.nodes.back().multiplicity;
      } else {
        out.nodes.push_back({0.0, 1});
        running_sum = 0.0;
      }
      continue;
    }
    if (!out.nodes.empty() && out.nodes.back().value > 0.0) {
      // Gap against the larger (previous) value of the consecutive pair.
      const double prev = s[i - 1];
      if ((prev - x) < tol * prev) {
        auto &node = out.nodes.back();
        running_sum += x;
        ++node.multiplicity;
        node.value = running_sum / node.multiplicity;
        continue;
      }
    }
    out.nodes.push_back({x, 1});
    running_sum = x;
  }
  return out;
}

Spectrum pad_with_zeros(const Spectrum &s, std::size_t m) {
  std::vector<double> v(s.values().data(), s.values().data() + s.size());
  v.resize(v.size() + m, 0.0);
  return Spectrum::from_values(std::span<const double>(v), s.cluster_tolerance());
}

Spectrum tensor_spectrum(const Spectrum &a, const Spectrum &b) {
  std::vector<double> v;
  v.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) v.push_back(a[i] * b[j]);
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return Spectrum::from_values(std::span<const double>(v), a.cluster_tolerance());
}

} // namespace qent
