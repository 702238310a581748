#include <doctest.h>

#include "qent/entropy.hpp"
#include "qent/io.hpp"
#include "qent/verify.hpp"

using namespace qent;

namespace {
const SuiteConfig kQuick{.mc_samples = 10000};
}

TEST_CASE("sampled spectra are valid and include degenerate pairs") {
  Rng rng(4);
  int degenerate = 0;
  for (int t = 0; t < 2000; ++t) {
    const Spectrum s = sample_spectrum(rng, 5);
    CHECK(std::abs(s.values().sum() - 1.0) < 1e-12);
    CHECK(s[4] >= 0.0);
    bool close = false;
    for (int i = 1; i < 5; ++i) close = close || s[i - 1] - s[i] < 1e-6 * s[i - 1];
    degenerate += close;
  }
  CHECK(degenerate > 40);
  CHECK(degenerate < 250);
}

TEST_CASE("each suite passes on small runs") {
  for (const auto &v : run_suite("all", 4, 50, 3, kQuick)) {
    INFO(v.property);
    CHECK(v.ok());
  }
  for (int n = 1; n <= 3; ++n)
    for (const auto &v : run_suite("chain", n, 50, 3)) CHECK(v.ok());
}

TEST_CASE("suites are deterministic for a fixed seed") {
  const auto a = run_suite("all", 3, 30, 99, kQuick), b = run_suite("all", 3, 30, 99, kQuick);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(io::verdict_to_json_line(a[i]) == io::verdict_to_json_line(b[i]));
}

TEST_CASE("negative control fails and is reported as expected") {
  const auto v = check_invariance_negative_control(4, 3, 20, 1);
  CHECK(v.expect_failure);
  CHECK_FALSE(v.passed);
  CHECK(v.ok());
  CHECK(v.worst_violation > 1e-3);
}

TEST_CASE("worst violation is reported on a pass") {
  const auto v = check_inequality_chain(5, 100, 2);
  CHECK(v.passed);
  CHECK(v.worst_violation < 0.0);
  CHECK(chain_violation(Spectrum::from_values({0.5, 0.3, 0.2})) < 0.0);
}

TEST_CASE("unknown suites are rejected") {
  CHECK(is_known_suite("chain"));
  CHECK(is_known_suite("all"));
  CHECK_FALSE(is_known_suite("bogus"));
}
