#pragma once

#include <cstdint>
#include <variant>
#include <vector>

namespace qent {

/// Binomial weights C(n-1,r-1) alpha^(r-1) (1-alpha)^(n-r), r = 1..n, evaluated
/// in log space (index 0 holds r = 1). These are the extreme
/// augmentation-invariant weightings.
std::vector<double> binomial_coefficients(int n, double alpha);

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double to_double() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction &, const Fraction &) = default;
};

/// One level n of the restricted-problem solution with b^(N)_r = delta_{r,rHat}:
///   b^(n)_r = C(n-1,r-1) C(N-n,rHat-r) / C(N-1,rHat-1).
/// All entries share `denominator`; `numerators` sum to it exactly.
struct RestrictedRow {
  std::vector<std::uint64_t> numerators;
  std::uint64_t denominator = 1;

  Fraction reduced(int r) const; // 1-based r
  double value(int r) const { return static_cast<double>(numerators.at(r - 1)) / static_cast<double>(denominator); }
};

/// Exact integer evaluation for 1 <= n <= N <= 64, 1 <= rHat <= N.
/// Throws Error(InvalidIndex) otherwise.
RestrictedRow restricted_coefficients(int N, int r_hat, int n);

/// Exact binomial coefficient; valid for n <= 66 (fits in 64 bits).
std::uint64_t binomial_u64(int n, int k);

struct BinomialKind {
  double alpha;
};
struct RestrictedKind {
  int N;
  int r_hat;
};

/// Weights b^(n)_r for n = 1..max_n. rows[n-1][r-1] holds b^(n)_r.
struct CoefficientTable {
  std::variant<BinomialKind, RestrictedKind> kind;
  std::vector<std::vector<double>> rows;
  // Populated for restricted tables only; same shape as rows.
  std::vector<RestrictedRow> exact_rows;

  static CoefficientTable binomial(double alpha, int max_n);
  static CoefficientTable restricted(int N, int r_hat);

  /// Largest |(n-r+1) b^(n+1)_r + r b^(n+1)_(r+1) - n b^(n)_r| over stored levels.
  double recursion_residual() const;
  /// True when every adjacent restricted level satisfies the recursion in
  /// integer arithmetic. Always false for binomial tables.
  bool recursion_exact() const;
};

} // namespace qent
