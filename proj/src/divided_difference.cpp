#include "qent/divided_difference.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "qent/error.hpp"

namespace qent {

namespace {

// Consecutive distinct nodes closer than this (relative) share a Taylor group.
constexpr long double kGroupGap = 0.1L;
// A group never spans more than this relative width.
constexpr long double kGroupWidth = 0.5L;
constexpr int kMaxTaylorTerms = 1000;

using Real = long double;

Real binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0L;
  k = std::min(k, n - k);
  Real c = 1.0L;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

Real harmonic(int n) {
  Real h = 0.0L;
  for (int i = n; i >= 1; --i) h += 1.0L / i;
  return h;
}

// Coefficient of u^k in (1+u)^r ln(1+u) plus the C(r,k) ln c part; i.e.
// the Taylor coefficient with the c^(r-k) scale factor removed.
Real scaled_coefficient(int r, int k, Real log_c) {
  if (k <= r) return binomial(r, k) * (log_c + harmonic(r) - harmonic(r - k));
  const Real mag = 1.0L / (k * binomial(k - 1, r));
  return ((k - r - 1) % 2 == 0) ? mag : -mag;
}

Real taylor_coefficient(int r, int k, Real c) {
  if (r < 0 || k < 0) throw Error(ErrorCode::InvalidR, "negative order");
  if (c == 0.0L) {
    if (k < r) return 0.0L;
    throw Error(ErrorCode::InvalidR, "x^r ln x has no finite derivative of order >= r at 0");
  }
  return std::pow(c, r - k) * scaled_coefficient(r, k, std::log(c));
}

} // namespace

double power_log_taylor(int r, int k, double c) {
  return static_cast<double>(taylor_coefficient(r, k, c));
}

double power_log_derivative(int r, int k, double x) {
  Real fact = 1.0L;
  for (int i = 2; i <= k; ++i) fact *= i;
  return static_cast<double>(fact * taylor_coefficient(r, k, x));
}

PowerLogDividedDifference::PowerLogDividedDifference(int r, std::span<const SpectrumNode> nodes)
    : r_(r) {
  if (r < 1) throw Error(ErrorCode::InvalidR, "order must be at least 1");
  values_.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i > 0 && !(nodes[i].value > nodes[i - 1].value))
      throw Error(ErrorCode::InvalidSpectrum, "divided-difference nodes must be strictly ascending");
    values_.push_back(nodes[i].value);
  }

  // Partition into groups.
  group_of_.resize(nodes.size());
  std::vector<std::size_t> starts;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Real v = values_[i];
    bool join = false;
    if (i > 0 && values_[i - 1] > 0.0L) {
      const Real start = values_[starts.back()];
      join = (v - values_[i - 1]) < kGroupGap * v && (v - start) <= kGroupWidth * start;
    }
    if (!join) starts.push_back(i);
    group_of_[i] = starts.size() - 1;
  }

  groups_.resize(starts.size());
  for (std::size_t g = 0; g < starts.size(); ++g) {
    Group &grp = groups_[g];
    grp.first_node = starts[g];
    const std::size_t end = (g + 1 < starts.size()) ? starts[g + 1] : nodes.size();
    Real mass = 0.0L;
    int count = 0;
    for (std::size_t i = grp.first_node; i < end; ++i) {
      mass += values_[i] * nodes[i].multiplicity;
      count += nodes[i].multiplicity;
    }
    grp.center = (end - grp.first_node == 1) ? values_[grp.first_node] : mass / count;

    // Derivatives of order >= r are singular at zero.
    const int max_order = grp.center == 0.0 ? std::min(count, r) - 1 : count - 1;
    if (grp.center == 0.0L) {
      grp.terms = 0;
      grp.taylor.assign(static_cast<std::size_t>(max_order) + 1, 0.0L);
      continue;
    }

    Real rho = 0.0L;
    for (std::size_t i = grp.first_node; i < end; ++i)
      rho = std::max(rho, std::abs(values_[i] - grp.center) / grp.center);

    // Truncate the expansion once the remainder bound is below roundoff.
    const Real log_c = std::log(grp.center);
    int terms = 0;
    if (rho > 0.0L) {
      Real scale = 0.0L;
      for (int d = 0; d <= max_order; ++d)
        scale = std::max(scale, std::abs(scaled_coefficient(r, d, log_c)));
      scale = std::max(scale, 1.0L);
      for (terms = 1; terms < kMaxTaylorTerms; ++terms) {
        Real bound = 0.0L;
        for (int d = 0; d <= max_order; ++d)
          bound = std::max(bound, std::abs(scaled_coefficient(r, d + terms, log_c)) *
                                      binomial(terms + d, d));
        bound *= std::pow(rho, terms);
        if (bound < 1e-21L * scale) break;
      }
    }
    grp.terms = terms;
    grp.taylor.resize(static_cast<std::size_t>(max_order + terms) + 1);
    for (std::size_t k = 0; k < grp.taylor.size(); ++k)
      grp.taylor[k] = taylor_coefficient(r, static_cast<int>(k), grp.center);
  }
}

void PowerLogDividedDifference::push(std::size_t node_index) {
  assert(node_index < values_.size());
  if (!sequence_.empty() && node_index < sequence_.back())
    throw Error(ErrorCode::InvalidSpectrum, "nodes must be pushed in ascending order");

  const std::size_t j = sequence_.size();
  sequence_.push_back(node_index);
  std::vector<long double> row(j + 1);

  const std::size_t g = group_of_[node_index];
  const Group &grp = groups_[g];

  // Positions i..j sharing the group of the new node: Taylor evaluation.
  std::size_t i = j + 1;
  h_.assign(static_cast<std::size_t>(grp.terms) + 1, 0.0L);
  h_[0] = 1.0L;
  while (i > 0 && group_of_[sequence_[i - 1]] == g) {
    --i;
    const Real w = values_[sequence_[i]] - grp.center;
    for (std::size_t p = 1; p < h_.size(); ++p) h_[p] += w * h_[p - 1];
    const std::size_t d = j - i;
    if (d >= grp.taylor.size())
      throw Error(ErrorCode::InvalidR, "too many repeated zero nodes for x^r ln x");
    Real acc = 0.0L;
    const std::size_t top = std::min(h_.size(), grp.taylor.size() - d);
    for (std::size_t p = top; p-- > 0;) acc += grp.taylor[d + p] * h_[p];
    row[i] = acc;
  }
  // Earlier groups: ordinary difference quotients.
  while (i-- > 0) {
    row[i] = (row[i + 1] - rows_[j - 1][i]) / (values_[node_index] - values_[sequence_[i]]);
  }
  rows_.push_back(std::move(row));
}

void PowerLogDividedDifference::pop() {
  sequence_.pop_back();
  rows_.pop_back();
}

long double PowerLogDividedDifference::value() const {
  if (rows_.empty()) return 0.0L;
  return rows_.back()[0];
}

double divided_difference(int r, std::span<const double> nodes) {
  std::vector<double> sorted(nodes.begin(), nodes.end());
  for (double x : sorted)
    if (!(x >= 0.0)) throw Error(ErrorCode::InvalidSpectrum, "nodes must be nonnegative");
  std::sort(sorted.begin(), sorted.end());
  std::vector<SpectrumNode> distinct;
  for (double x : sorted) {
    if (!distinct.empty() && distinct.back().value == x)
      ++distinct.back().multiplicity;
    else
      distinct.push_back({x, 1});
  }
  PowerLogDividedDifference table(r, distinct);
  for (std::size_t i = 0; i < distinct.size(); ++i)
    for (int m = 0; m < distinct[i].multiplicity; ++m) table.push(i);
  return static_cast<double>(table.value());
}

} // namespace qent
