#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string_view>

#include <Eigen/Dense>

#include "qent/random.hpp"
#include "qent/spectra.hpp"

namespace qent {

enum class OracleMethod { contour, simplexMC, haarMC };

std::string_view to_string(OracleMethod m) noexcept;

struct OracleEstimate {
  double value = 0.0;
  double std_error = 0.0; // 0 for deterministic quadrature
  std::uint64_t samples = 1;
  OracleMethod method = OracleMethod::contour;
  // Range of the per-sample statistic (Monte Carlo methods only).
  double min_sample = 0.0;
  double max_sample = 0.0;
};

enum class ContourShape {
  /// Ellipse in the w = ln z plane around [ln lambda_min+, ln lambda_max].
  /// The integrand becomes w F(e^w) e^w, which is analytic apart from the
  /// poles ln lambda_j + 2 pi i k, so accuracy does not degrade when the
  /// smallest nonzero eigenvalue approaches zero.
  log_ellipse,
  /// Circle in the z plane whose leftmost point is margin_factor * lambda_min+.
  /// Converges slowly once lambda_min+ << lambda_max.
  circle,
};

struct ContourConfig {
  int nodes = 512;
  double margin_factor = 0.5;
  ContourShape shape = ContourShape::log_ellipse;
};

/// Trapezoidal approximation of (1 / 2 pi i) * contour integral of
/// (ln z) F(z) dz around every nonzero eigenvalue of `s` and away from the
/// branch cut of ln. Throws DegenerateContour if the spectrum has no nonzero
/// eigenvalue.
std::complex<double> contour_log_integral(
    const Spectrum &s, const ContourConfig &cfg,
    const std::function<std::complex<double>(std::complex<double>)> &integrand);

/// R^(n)_r from the characteristic-polynomial contour integral.
OracleEstimate contour_r(const Spectrum &s, int r, const ContourConfig &cfg = {});

/// Interpolant from the determinant contour integral, alpha in (0, 1].
OracleEstimate contour_interpolant(const Spectrum &s, double alpha, const ContourConfig &cfg = {});

/// R^(n)_r as n times the mean of the simplex integrand over uniformly chosen
/// r-faces with flat-Dirichlet points on each face.
OracleEstimate simplex_mc(const Spectrum &s, int r, std::uint64_t samples, std::uint64_t seed);

/// Mean mutual information between the eigenbasis index and the outcome of
/// a Haar-random complete orthogonal measurement. Converges to Q.
OracleEstimate haar_average_information(const Spectrum &s, std::uint64_t samples,
                                        std::uint64_t seed);

/// Haar-distributed n x n unitary: QR of a complex Gaussian matrix, with
/// each column of Q rescaled by the phase of the matching diagonal entry
/// of R. Without that rescaling the result is not Haar distributed.
Eigen::MatrixXcd haar_unitary(Eigen::Index n, Rng &rng);

/// I(index; outcome) in nats for prior `probs` over basis states measured in
/// the orthonormal basis given by the columns of `basis`.
double measurement_information(const Eigen::VectorXd &probs, const Eigen::MatrixXcd &basis);

} // namespace qent
