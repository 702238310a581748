#include <doctest.h>

#include <cmath>
#include <vector>

#include "qent/divided_difference.hpp"
#include "qent/random.hpp"

using namespace qent;

namespace {

long double g(int r, long double x) { return x == 0 ? 0.0L : std::pow(x, r) * std::log(x); }

// Recursive divided difference on distinct nodes in extended precision.
long double naive_dd(int r, const std::vector<long double> &z, std::size_t i, std::size_t j) {
  if (i == j) return g(r, z[i]);
  return (naive_dd(r, z, i + 1, j) - naive_dd(r, z, i, j - 1)) / (z[j] - z[i]);
}

} // namespace

TEST_CASE("Taylor coefficients match central finite differences") {
  for (int r = 1; r <= 5; ++r) {
    for (double x : {0.1, 0.37, 0.9}) {
      const long double h = 1e-4L;
      const long double d1 = (g(r, x + h) - g(r, x - h)) / (2 * h);
      const long double d2 = (g(r, x + h) - 2 * g(r, x) + g(r, x - h)) / (h * h);
      CHECK(power_log_derivative(r, 1, x) == doctest::Approx(static_cast<double>(d1)).epsilon(1e-7));
      CHECK(power_log_derivative(r, 2, x) == doctest::Approx(static_cast<double>(d2)).epsilon(1e-5));
      CHECK(power_log_taylor(r, 0, x) == doctest::Approx(static_cast<double>(g(r, x))).epsilon(1e-15));
    }
  }
}

TEST_CASE("known derivatives") {
  // d/dx x^2 ln x at 0.5 = 2 * 0.5 ln 0.5 + 0.5
  CHECK(power_log_derivative(2, 1, 0.5) == doctest::Approx(2 * 0.5 * std::log(0.5) + 0.5).epsilon(1e-15));
  // d^2/dx^2 x ln x = 1/x
  CHECK(power_log_derivative(1, 2, 0.25) == doctest::Approx(4.0).epsilon(1e-15));
  // d^3/dx^3 x^2 ln x = 2/x
  CHECK(power_log_derivative(2, 3, 0.5) == doctest::Approx(4.0).epsilon(1e-14));
  // below-order derivatives of x^r ln x vanish at 0
  CHECK(power_log_taylor(3, 2, 0.0) == 0.0);
}

TEST_CASE("two-node divided difference") {
  const double a = 0.7, b = 0.3;
  const double expect = (a * std::log(a) - b * std::log(b)) / (a - b);
  CHECK(divided_difference(1, std::vector<double>{b, a}) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("distinct nodes match extended precision recursion") {
  Rng rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(rng.below(4));
    const int r = 1 + static_cast<int>(rng.below(m));
    std::vector<double> z(m);
    std::vector<long double> zl(m);
    for (int i = 0; i < m; ++i) z[i] = 0.05 + 0.9 * rng.uniform();
    std::sort(z.begin(), z.end());
    bool spread = true;
    for (int i = 1; i < m; ++i) spread = spread && z[i] - z[i - 1] > 0.05;
    if (!spread) continue;
    for (int i = 0; i < m; ++i) zl[i] = z[i];
    const double expect = static_cast<double>(naive_dd(r, zl, 0, m - 1));
    CHECK(divided_difference(r, z) == doctest::Approx(expect).epsilon(1e-11));
  }
}

TEST_CASE("confluent nodes equal the scaled derivative") {
  for (int r = 1; r <= 4; ++r)
    for (int m = 1; m <= 5; ++m) {
      std::vector<double> z(m, 0.4);
      double fact = 1;
      for (int k = 2; k < m; ++k) fact *= k;
      CHECK(divided_difference(r, z) ==
            doctest::Approx(power_log_derivative(r, m - 1, 0.4) / fact).epsilon(1e-14));
    }
}

TEST_CASE("near-confluent nodes are continuous with the confluent limit") {
  for (double eps : {1e-3, 1e-5, 1e-8, 1e-11}) {
    const std::vector<double> z{0.3, 0.3 + eps, 0.6};
    const std::vector<double> c{0.3, 0.3, 0.6};
    CHECK(std::abs(divided_difference(2, z) - divided_difference(2, c)) < 5 * eps + 1e-13);
  }
}

TEST_CASE("all-zero nodes give zero") {
  for (int r = 1; r <= 4; ++r)
    for (int m = 1; m <= r; ++m) CHECK(divided_difference(r, std::vector<double>(m, 0.0)) == 0.0);
}

TEST_CASE("push/pop evaluator matches the free function") {
  const std::vector<SpectrumNode> nodes{{0.1, 2}, {0.3, 1}, {0.6, 1}};
  PowerLogDividedDifference dd(2, nodes);
  dd.push(0);
  dd.push(0);
  dd.push(2);
  CHECK(dd.depth() == 3);
  CHECK(dd.value() == doctest::Approx(divided_difference(2, std::vector<double>{0.1, 0.1, 0.6})).epsilon(1e-14));
  dd.pop();
  dd.push(1);
  CHECK(dd.value() == doctest::Approx(divided_difference(2, std::vector<double>{0.1, 0.1, 0.3})).epsilon(1e-14));
}
