#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qent/spectra.hpp"

namespace qent {

/// Taylor coefficient g^(k)(c)/k! of g(x) = x^r ln x about c >= 0.
///
/// For k <= r this is c^(r-k) C(r,k) (ln c + H_r - H_(r-k)); for k > r it is
/// c^(r-k) (-1)^(k-r-1) / (k C(k-1,r)). At c = 0 every order k < r vanishes.
double power_log_taylor(int r, int k, double c);

/// k-th derivative of x^r ln x.
double power_log_derivative(int r, int k, double x);

/// Incremental Newton divided-difference table for g(x) = x^r ln x over a
/// multiset of nodes drawn from a fixed set of distinct values.
///
/// Nodes must be pushed in nondecreasing order of value. Repeated nodes use
/// derivatives (the confluent limit). Runs of nearby nodes are grouped and
/// their entries are evaluated from a Taylor expansion about the group
/// centre, so that nearly coincident eigenvalues do not lose precision to
/// cancellation in the difference quotients. The table is kept in extended
/// precision.
class PowerLogDividedDifference {
public:
  /// `nodes` must be ascending by value with positive multiplicities.
  PowerLogDividedDifference(int r, std::span<const SpectrumNode> nodes);

  void push(std::size_t node_index);
  void pop();
  std::size_t depth() const noexcept { return sequence_.size(); }

  /// g[z_0, ..., z_depth-1].
  long double value() const;

private:
  struct Group {
    long double center = 0.0L;
    std::size_t first_node = 0;
    std::vector<long double> taylor; // taylor[k] = g^(k)(center)/k!
    int terms = 0;
  };

  int r_;
  std::vector<long double> values_;
  std::vector<std::size_t> group_of_;
  std::vector<Group> groups_;
  std::vector<std::size_t> sequence_;
  std::vector<std::vector<long double>> rows_;
  std::vector<long double> h_;
};

/// Divided difference of x^r ln x over an arbitrary multiset of nonnegative
/// nodes. Throws Error(InvalidR) if a zero node repeats more than r times.
double divided_difference(int r, std::span<const double> nodes);

} // namespace qent
