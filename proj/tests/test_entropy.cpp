#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracle_util.hpp"
#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/verify.hpp"

using namespace qent;

TEST_CASE("two-level closed forms") {
  const Spectrum s = Spectrum::from_values({0.7, 0.3});
  CHECK(von_neumann_entropy(s) == doctest::Approx(0.6108643020548935).epsilon(1e-14));
  CHECK(subentropy(s) == doctest::Approx(0.1660329253516116).epsilon(1e-13));
  // Q = (a^2 ln a - b^2 ln b) / (b - a) for two levels
  const double a = 0.7, b = 0.3;
  CHECK(subentropy(s) == doctest::Approx((a * a * std::log(a) - b * b * std::log(b)) / (b - a)).epsilon(1e-14));
  CHECK(interpolant(s, 0.5) == doctest::Approx(0.3884486137032526).epsilon(1e-13));
}

TEST_CASE("uniform spectra attain ln n - (H_r - 1)") {
  const Spectrum u3 = Spectrum::uniform(3);
  CHECK(intermediate_r(u3, 2) == doctest::Approx(std::log(3.0) - 0.5).epsilon(1e-13));
  CHECK(subentropy(u3) == doctest::Approx(std::log(3.0) - 0.5 - 1.0 / 3).epsilon(1e-13));
  CHECK(max_value_r(5, 3) == doctest::Approx(std::log(5.0) - 5.0 / 6).epsilon(1e-15));
  CHECK(max_value_r(7, 1) == doctest::Approx(std::log(7.0)).epsilon(1e-15));
  for (int n = 2; n <= 10; ++n) {
    const auto rs = intermediate_r_all(Spectrum::uniform(n));
    for (int r = 1; r <= n; ++r) CHECK(std::abs(rs[r - 1] - max_value_r(n, r)) < 1e-10);
  }
}

TEST_CASE("pure states and trivial dimension give zero") {
  CHECK(subentropy(Spectrum::from_values({1.0})) == 0.0);
  for (double v : intermediate_r_all(Spectrum::pure(5))) CHECK(std::abs(v) < 1e-15);
  const auto rep = full_report(Spectrum::from_values({1.0}), std::vector<double>{0.0, 1.0});
  CHECK(rep.S == 0.0);
  CHECK(rep.Q == 0.0);
}

TEST_CASE("closed form matches the extended precision direct sum") {
  Rng rng(2024);
  for (int n = 2; n <= 8; ++n)
    for (int t = 0; t < 20; ++t) {
      const Spectrum s = sample_spectrum(rng, n, 0.0);
      double gap = 1.0;
      for (int i = 1; i < n; ++i) gap = std::min(gap, s[i - 1] - s[i]);
      if (gap < 1e-2) continue;
      for (int r = 1; r <= n; ++r) {
        const double expect = static_cast<double>(test::direct_r(s, r));
        CHECK(std::abs(intermediate_r(s, r) - expect) < 1e-12 * std::max(1.0, std::abs(expect)));
      }
    }
}

TEST_CASE("degenerate spectra match the split-spectrum limit") {
  struct Case {
    std::vector<long double> l, offsets;
  };
  const std::vector<Case> cases{
      {{0.5L, 0.5L, 0.0L}, {1, -1, 0}},
      {{0.25L, 0.25L, 0.25L, 0.25L}, {1.5L, 0.5L, -0.5L, -1.5L}},
      {{0.4L, 0.4L, 0.1L, 0.1L}, {1, -1, 1, -1}},
      {{0.3L, 0.3L, 0.3L, 0.1L}, {1, 0, -1, 0}},
  };
  for (const auto &c : cases) {
    std::vector<double> v(c.l.begin(), c.l.end());
    const Spectrum s = Spectrum::from_values(v);
    for (int r = 1; r <= static_cast<int>(v.size()); ++r) {
      const double limit = static_cast<double>(test::split_limit(c.l, c.offsets, r, 1e-3L));
      CHECK(std::abs(intermediate_r(s, r) - limit) < 1e-6);
    }
  }
}

TEST_CASE("nearly degenerate spectra are continuous") {
  const Spectrum exact = Spectrum::from_values({0.4, 0.4, 0.2});
  for (double eps : {1e-4, 1e-7, 1e-10, 1e-13}) {
    const Spectrum near = Spectrum::from_values({0.4 + eps, 0.4 - eps, 0.2});
    for (int r = 1; r <= 3; ++r) CHECK(std::abs(intermediate_r(near, r) - intermediate_r(exact, r)) < 10 * eps + 1e-13);
  }
}

TEST_CASE("zero padding recursion agrees with direct evaluation") {
  Rng rng(8);
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 3; ++m) {
      const Spectrum s = sample_spectrum(rng, n);
      const auto padded = pad_recursion(intermediate_r_all(s), m);
      const auto direct = intermediate_r_all(pad_with_zeros(s, m));
      REQUIRE(padded.size() == direct.size());
      for (std::size_t r = 0; r < direct.size(); ++r) CHECK(std::abs(padded[r] - direct[r]) < 1e-10);
    }
}

TEST_CASE("interpolant endpoints and monotonicity") {
  const Spectrum s = Spectrum::from_values({0.5, 0.25, 0.15, 0.1});
  CHECK(interpolant(s, 0.0) == doctest::Approx(von_neumann_entropy(s)).epsilon(1e-14));
  CHECK(interpolant(s, 1.0) == doctest::Approx(subentropy(s)).epsilon(1e-14));
  double prev = interpolant(s, 0.0);
  for (int k = 1; k <= 20; ++k) {
    const double v = interpolant(s, 0.05 * k);
    CHECK(v <= prev + 1e-12);
    prev = v;
  }
  CHECK_THROWS_AS(interpolant(s, 1.5), Error);
}

TEST_CASE("errors") {
  const Spectrum s = Spectrum::from_values({0.5, 0.5});
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::Usage;
  };
  CHECK(code([&] { intermediate_r(s, 0); }) == ErrorCode::InvalidR);
  CHECK(code([&] { intermediate_r(s, 3); }) == ErrorCode::InvalidR);
  CHECK(code([] { intermediate_r(Spectrum::uniform(25), 2); }) == ErrorCode::CapExceeded);
  CHECK_NOTHROW(intermediate_r(Spectrum::uniform(24), 12));
  CHECK(code([] { interpolant(Spectrum::uniform(3), -0.1); }) == ErrorCode::AlphaOutOfRange);
}

TEST_CASE("full report fields agree with the individual functions") {
  const Spectrum s = Spectrum::from_values({0.6, 0.3, 0.1});
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const EntropyReport rep = full_report(s, grid);
  CHECK(rep.n == 3);
  CHECK(rep.S == von_neumann_entropy(s));
  CHECK(rep.Q == subentropy(s));
  CHECK(rep.R.size() == 3);
  CHECK(rep.alpha_samples.size() == 3);
  CHECK(rep.alpha_samples[1].value == doctest::Approx(interpolant(s, 0.5)).epsilon(1e-15));
}
