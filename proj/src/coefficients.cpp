#include "qent/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qent/error.hpp"

namespace qent {

namespace {
using u128 = unsigned __int128;
using i128 = __int128;

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}
} // namespace

std::uint64_t binomial_u64(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (n > 66) throw Error(ErrorCode::InvalidIndex, "binomial argument too large for exact evaluation");
  k = std::min(k, n - k);
  u128 c = 1;
  for (int i = 1; i <= k; ++i) c = c * static_cast<u128>(n - k + i) / static_cast<u128>(i);
  return static_cast<std::uint64_t>(c);
}

std::vector<double> binomial_coefficients(int n, double alpha) {
  if (n < 1) throw Error(ErrorCode::InvalidIndex, "n must be at least 1");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in [0, 1]");
  std::vector<double> b(static_cast<std::size_t>(n), 0.0);
  if (alpha == 0.0) {
    b.front() = 1.0;
    return b;
  }
  if (alpha == 1.0) {
    b.back() = 1.0;
    return b;
  }
  const double la = std::log(alpha);
  const double lb = std::log1p(-alpha);
  for (int r = 1; r <= n; ++r)
    b[r - 1] = std::exp(log_binomial(n - 1, r - 1) + (r - 1) * la + (n - r) * lb);
  return b;
}

Fraction RestrictedRow::reduced(int r) const {
  const std::uint64_t num = numerators.at(static_cast<std::size_t>(r - 1));
  const std::uint64_t g = std::gcd(num, denominator);
  if (g == 0) return {0, 1};
  return {num / g, denominator / g};
}

RestrictedRow restricted_coefficients(int N, int r_hat, int n) {
  if (N < 1 || N > 64) throw Error(ErrorCode::InvalidIndex, "N must lie in [1, 64]");
  if (r_hat < 1 || r_hat > N) throw Error(ErrorCode::InvalidIndex, "rHat must lie in [1, N]");
  if (n < 1 || n > N) throw Error(ErrorCode::InvalidIndex, "n must lie in [1, N]");
  RestrictedRow row;
  row.denominator = binomial_u64(N - 1, r_hat - 1);
  row.numerators.resize(static_cast<std::size_t>(n));
  for (int r = 1; r <= n; ++r) {
    // Each product is bounded by the denominator (Vandermonde), so it fits.
    const u128 prod = static_cast<u128>(binomial_u64(n - 1, r - 1)) *
                      static_cast<u128>(binomial_u64(N - n, r_hat - r));
    row.numerators[static_cast<std::size_t>(r - 1)] = static_cast<std::uint64_t>(prod);
  }
  return row;
}

CoefficientTable CoefficientTable::binomial(double alpha, int max_n) {
  CoefficientTable t{BinomialKind{alpha}, {}, {}};
  for (int n = 1; n <= max_n; ++n) t.rows.push_back(binomial_coefficients(n, alpha));
  return t;
}

CoefficientTable CoefficientTable::restricted(int N, int r_hat) {
  CoefficientTable t{RestrictedKind{N, r_hat}, {}, {}};
  for (int n = 1; n <= N; ++n) {
    RestrictedRow row = restricted_coefficients(N, r_hat, n);
    std::vector<double> d(row.numerators.size());
    for (std::size_t r = 0; r < d.size(); ++r) d[r] = row.value(static_cast<int>(r + 1));
    t.rows.push_back(std::move(d));
    t.exact_rows.push_back(std::move(row));
  }
  return t;
}

double CoefficientTable::recursion_residual() const {
  double worst = 0.0;
  for (std::size_t lvl = 0; lvl + 1 < rows.size(); ++lvl) {
    const auto &lo = rows[lvl];
    const auto &hi = rows[lvl + 1];
    const int n = static_cast<int>(lvl + 1);
    for (int r = 1; r <= n; ++r) {
      const double lhs = (n - r + 1) * hi[r - 1] + r * hi[r];
      worst = std::max(worst, std::abs(lhs - n * lo[r - 1]));
    }
  }
  return worst;
}

bool CoefficientTable::recursion_exact() const {
  if (exact_rows.empty()) return false;
  for (std::size_t lvl = 0; lvl + 1 < exact_rows.size(); ++lvl) {
    const auto &lo = exact_rows[lvl];
    const auto &hi = exact_rows[lvl + 1];
    if (lo.denominator != hi.denominator) return false;
    const int n = static_cast<int>(lvl + 1);
    for (int r = 1; r <= n; ++r) {
      const i128 lhs = static_cast<i128>(n - r + 1) * hi.numerators[r - 1] +
                       static_cast<i128>(r) * hi.numerators[r];
      const i128 rhs = static_cast<i128>(n) * lo.numerators[r - 1];
      if (lhs != rhs) return false;
    }
  }
  return true;
}

} // namespace qent
