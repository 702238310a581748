#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qent/spectra.hpp"

namespace qent {

/// Closed-form evaluation enumerates C(n, r) eigenvalue subsets; beyond this
/// dimension it refuses with Error(CapExceeded). The contour oracle has no
/// such limit.
inline constexpr std::size_t kClosedFormMaxDim = 24;

/// -sum lambda ln lambda in nats, with 0 ln 0 = 0.
double von_neumann_entropy(const Spectrum &s);

/// Subentropy; the r = n member of the R family.
double subentropy(const Spectrum &s);

/// R^(n)_r for 1 <= r <= n (nats). Degenerate eigenvalues are handled as
/// exact confluent limits. Throws InvalidR or CapExceeded.
double intermediate_r(const Spectrum &s, int r);

/// R^(n)_1 .. R^(n)_n in one pass (index 0 holds r = 1).
std::vector<double> intermediate_r_all(const Spectrum &s);

/// ln n - (1/2 + ... + 1/r); ln n when r = 1.
double max_value_r(int n, int r);

/// R values after appending m zero eigenvalues, from the values before.
std::vector<double> pad_recursion(std::span<const double> r_values, int m);

/// Sum_r C(n-1,r-1) alpha^(r-1) (1-alpha)^(n-r) R^(n)_r. Invariant under
/// zero padding; equals S at alpha = 0 and Q at alpha = 1.
double interpolant(const Spectrum &s, double alpha);
double interpolant_from_r(std::span<const double> r_values, double alpha);

struct AlphaSample {
  double alpha;
  double value;
  friend bool operator==(const AlphaSample &, const AlphaSample &) = default;
};

struct EntropyReport {
  int n = 0;
  double S = 0.0;
  double Q = 0.0;
  std::vector<double> R; // R[0] is r = 1
  std::vector<AlphaSample> alpha_samples;

  friend bool operator==(const EntropyReport &, const EntropyReport &) = default;
};

/// Computes everything for one spectrum and checks the report invariants
/// (endpoints, monotone chain, range [0, ln n]) before returning; a breach
/// throws Error(InvariantViolation).
EntropyReport full_report(const Spectrum &s, std::span<const double> alpha_grid = {});

} // namespace qent
