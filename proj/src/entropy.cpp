#include "qent/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qent/coefficients.hpp"
#include "qent/divided_difference.hpp"
#include "qent/error.hpp"

namespace qent {

namespace {

constexpr double kReportSlack = 1e-10;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

struct NeumaierSum {
  long double sum = 0.0L;
  long double carry = 0.0L;
  void add(long double x) {
    const long double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      carry += (sum - t) + x;
    else
      carry += (x - t) + sum;
    sum = t;
  }
  long double value() const { return sum + carry; }
};

// Sum over all r-element sub-multisets of the clustered spectrum of
// (number of position subsets with that signature) * g_r[subset].
class SubsetEnumerator {
public:
  SubsetEnumerator(std::span<const SpectrumNode> ascending, int r)
      : nodes_(ascending), table_(r, ascending), suffix_(ascending.size() + 1, 0) {
    for (std::size_t i = ascending.size(); i-- > 0;)
      suffix_[i] = suffix_[i + 1] + ascending[i].multiplicity;
  }

  long double run(int r) {
    visit(0, r, 1.0);
    return acc_.value();
  }

private:
  void visit(std::size_t idx, int remaining, double weight) {
    if (remaining == 0) {
      acc_.add(weight * table_.value());
      return;
    }
    if (idx == nodes_.size() || suffix_[idx] < remaining) return;
    const int m = nodes_[idx].multiplicity;
    const int top = std::min(m, remaining);
    visit(idx + 1, remaining, weight);
    for (int c = 1; c <= top; ++c) {
      table_.push(idx);
      visit(idx + 1, remaining - c, weight * binomial(m, c));
    }
    for (int c = 1; c <= top; ++c) table_.pop();
  }

  std::span<const SpectrumNode> nodes_;
  PowerLogDividedDifference table_;
  std::vector<int> suffix_;
  NeumaierSum acc_;
};

void check_cap(const Spectrum &s) {
  if (s.size() > kClosedFormMaxDim) {
    std::ostringstream os;
    os << "closed form is limited to n <= " << kClosedFormMaxDim << " (got n = " << s.size()
       << "); use the contour oracle for larger spectra";
    throw Error(ErrorCode::CapExceeded, os.str());
  }
}

double r_from_nodes(std::span<const SpectrumNode> ascending, int n, int r) {
  SubsetEnumerator e(ascending, r);
  return static_cast<double>(-e.run(r) / static_cast<long double>(binomial(n - 1, r - 1)));
}

std::vector<SpectrumNode> ascending_nodes(const Spectrum &s) {
  ClusteredSpectrum c = cluster(s);
  std::reverse(c.nodes.begin(), c.nodes.end());
  return c.nodes;
}

} // namespace

double von_neumann_entropy(const Spectrum &s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = s[i];
    if (x > 0.0) acc -= x * std::log(x);
  }
  return acc;
}

double intermediate_r(const Spectrum &s, int r) {
  const int n = static_cast<int>(s.size());
  if (r < 1 || r > n) {
    std::ostringstream os;
    os << "r = " << r << " outside [1, " << n << "]";
    throw Error(ErrorCode::InvalidR, os.str());
  }
  check_cap(s);
  const auto nodes = ascending_nodes(s);
  return r_from_nodes(nodes, n, r);
}

double subentropy(const Spectrum &s) { return intermediate_r(s, static_cast<int>(s.size())); }

std::vector<double> intermediate_r_all(const Spectrum &s) {
  check_cap(s);
  const int n = static_cast<int>(s.size());
  const auto nodes = ascending_nodes(s);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int r = 1; r <= n; ++r) out[static_cast<std::size_t>(r - 1)] = r_from_nodes(nodes, n, r);
  return out;
}

double max_value_r(int n, int r) {
  if (n < 1 || r < 1 || r > n) {
    std::ostringstream os;
    os << "r = " << r << " outside [1, " << n << "]";
    throw Error(ErrorCode::InvalidR, os.str());
  }
  double tail = 0.0;
  for (int k = r; k >= 2; --k) tail += 1.0 / k;
  return std::log(static_cast<double>(n)) - tail;
}

std::vector<double> pad_recursion(std::span<const double> r_values, int m) {
  const int n = static_cast<int>(r_values.size());
  if (n < 1) throw Error(ErrorCode::InvalidR, "need at least one R value");
  if (m < 0) throw Error(ErrorCode::InvalidIndex, "padding must be nonnegative");
  std::vector<double> out(static_cast<std::size_t>(n + m));
  for (int r = 1; r <= n + m; ++r) {
    double acc = 0.0;
    for (int s = 0; s <= r - 1; ++s) {
      const int idx = r - s;
      if (idx < 1 || idx > n) continue;
      acc += binomial(n - 1, r - 1 - s) * binomial(m, s) * r_values[static_cast<std::size_t>(idx - 1)];
    }
    out[static_cast<std::size_t>(r - 1)] = acc / binomial(n + m - 1, r - 1);
  }
  return out;
}

double interpolant_from_r(std::span<const double> r_values, double alpha) {
  const auto b = binomial_coefficients(static_cast<int>(r_values.size()), alpha);
  double acc = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] != 0.0) acc += b[i] * r_values[i];
  return acc;
}

double interpolant(const Spectrum &s, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::AlphaOutOfRange, "alpha must lie in [0, 1]");
  return interpolant_from_r(intermediate_r_all(s), alpha);
}

EntropyReport full_report(const Spectrum &s, std::span<const double> alpha_grid) {
  EntropyReport rep;
  rep.n = static_cast<int>(s.size());
  rep.R = intermediate_r_all(s);
  rep.S = von_neumann_entropy(s);
  rep.Q = rep.R.back();
  for (double a : alpha_grid) {
    if (!(a >= 0.0 && a <= 1.0))
      throw Error(ErrorCode::AlphaOutOfRange, "alpha grid value outside [0, 1]");
    rep.alpha_samples.push_back({a, interpolant_from_r(rep.R, a)});
  }

  auto fail = [](const std::string &what) { throw Error(ErrorCode::InvariantViolation, what); };
  if (std::abs(rep.R.front() - rep.S) > kReportSlack) fail("R_1 differs from S");
  for (std::size_t r = 0; r + 1 < rep.R.size(); ++r)
    if (rep.R[r + 1] > rep.R[r] + kReportSlack) fail("R is not nonincreasing in r");
  const double top = std::log(static_cast<double>(rep.n)) + kReportSlack;
  for (double v : rep.R)
    if (v < -kReportSlack || v > top) fail("R value outside [0, ln n]");
  return rep;
}

} // namespace qent
