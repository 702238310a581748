// Acceptance run: one PASS/FAIL line per criterion; nonzero exit on any failure.
#include <quadmath.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracle_util.hpp"
#include "qent/coefficients.hpp"
#include "qent/entropy.hpp"
#include "qent/oracles.hpp"
#include "qent/random.hpp"
#include "qent/verify.hpp"

using namespace qent;

namespace {

struct Outcome {
  bool pass;
  std::string summary;
};

struct Criterion {
  int id;
  const char *name;
  double time_limit; // seconds; 0 means no limit
  std::function<Outcome()> run;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Q by direct divided-difference sum in quad precision (distinct eigenvalues).
double quad_subentropy(const Spectrum &s) {
  const int n = static_cast<int>(s.size());
  __float128 total = 0;
  for (int j = 0; j < n; ++j) {
    const __float128 lj = s[j];
    if (lj == 0) continue;
    __float128 term = powq(lj, n) * logq(lj);
    for (int k = 0; k < n; ++k)
      if (k != j) term /= (lj - static_cast<__float128>(s[k]));
    total += term;
  }
  return static_cast<double>(-total);
}

double quad_entropy(const Spectrum &s) {
  __float128 total = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] > 0) total -= static_cast<__float128>(s[i]) * logq(static_cast<__float128>(s[i]));
  return static_cast<double>(total);
}

double harmonic_tail(int r) {
  double h = 0.0;
  for (int k = 2; k <= r; ++k) h += 1.0 / k;
  return h;
}

std::vector<double> alpha_grid_005() {
  std::vector<double> g;
  for (int k = 0; k <= 20; ++k) g.push_back(k / 20.0);
  return g;
}

double min_gap(const Spectrum &s) {
  double gap = 1.0;
  for (std::size_t i = 1; i < s.size(); ++i) gap = std::min(gap, s[i - 1] - s[i]);
  return gap;
}

Outcome boundary_identities() {
  Rng rng(101);
  double worst = 0.0;
  int bad = 0;
  for (int n = 2; n <= 8; ++n)
    for (int t = 0; t < 1000; ++t) {
      const Spectrum s = sample_spectrum(rng, n, 0.0);
      const double S = quad_entropy(s), Q = quad_subentropy(s);
      const double e1 = std::abs(intermediate_r(s, 1) - S) / std::abs(S);
      const double en = std::abs(intermediate_r(s, n) - Q) / std::abs(Q);
      const double es = std::abs(von_neumann_entropy(s) - S) / std::abs(S);
      const double e = std::max({e1, en, es});
      worst = std::max(worst, e);
      bad += !(e < 1e-12);
    }
  return {bad == 0, fmt("7000 spectra, worst relative error %.2e, failures %d", worst, bad)};
}

Outcome inequality_chain() {
  double worst = -1e300;
  std::uint64_t fails = 0, trials = 0;
  for (int n = 2; n <= 8; ++n) {
    const auto v = check_inequality_chain(n, 10000, 202 + n);
    worst = std::max(worst, v.worst_violation);
    fails += v.failures;
    trials += v.trials;
  }
  return {fails == 0, fmt("%llu spectra, max R_(r+1) - R_r = %.3e, failures %llu",
                          (unsigned long long)trials, worst, (unsigned long long)fails)};
}

Outcome maximum_value() {
  double worst_uniform = 0.0, worst_excess = -1e300;
  for (int n = 2; n <= 10; ++n) {
    const auto rs = intermediate_r_all(Spectrum::uniform(n));
    for (int r = 1; r <= n; ++r)
      worst_uniform = std::max(worst_uniform, std::abs(rs[r - 1] - (std::log(n) - harmonic_tail(r))));
  }
  Rng rng(303);
  for (int n = 2; n <= 10; ++n)
    for (int t = 0; t < 1000; ++t) {
      const auto rs = intermediate_r_all(sample_spectrum(rng, n));
      for (int r = 1; r <= n; ++r)
        worst_excess = std::max(worst_excess, rs[r - 1] - (std::log(n) - harmonic_tail(r)));
    }
  return {worst_uniform < 1e-10 && worst_excess <= 1e-10,
          fmt("uniform error %.2e; max excess over bound on 9000 spectra %.3e", worst_uniform, worst_excess)};
}

Outcome padding_recursion() {
  Rng rng(404);
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n)
    for (int m = 1; m <= 3; ++m)
      for (int t = 0; t < 100; ++t) {
        const Spectrum s = sample_spectrum(rng, n);
        const auto padded = pad_recursion(intermediate_r_all(s), m);
        const auto direct = intermediate_r_all(pad_with_zeros(s, m));
        for (std::size_t r = 0; r < direct.size(); ++r) worst = std::max(worst, std::abs(padded[r] - direct[r]));
      }
  return {worst < 1e-10, fmt("1800 cases, worst deviation %.2e", worst)};
}

Outcome augmentation_invariance() {
  double worst = 0.0, control = 0.0;
  bool all_passed = true;
  for (int n = 1; n <= 6; ++n) {
    const auto v = check_invariance(n, 3, alpha_grid_005(), 100, 505 + n);
    worst = std::max(worst, v.worst_violation);
    all_passed = all_passed && v.passed;
  }
  for (int n = 3; n <= 6; ++n) {
    const auto c = check_invariance_negative_control(n, 3, 100, 555 + n);
    control = std::max(control, c.worst_violation);
  }
  return {all_passed && worst < 1e-9 && control > 1e-3,
          fmt("max deviation %.2e; delta_(r,2) control max deviation %.3f", worst, control)};
}

Outcome coefficient_laws() {
  std::vector<RestrictedCase> restricted;
  for (int N = 1; N <= 12; ++N)
    for (int rh = 1; rh <= N; ++rh) restricted.push_back({N, rh});
  const auto v = check_coefficient_recursion(12, {0.0, 0.25, 0.5, 0.75, 1.0}, restricted);
  bool exact = true, boundary = true;
  double binom_residual = 0.0;
  for (const auto &[N, rh] : restricted) {
    const auto t = CoefficientTable::restricted(N, rh);
    exact = exact && t.recursion_exact();
    for (int r = 1; r <= N; ++r)
      boundary = boundary && t.exact_rows.back().reduced(r) == (r == rh ? Fraction{1, 1} : Fraction{0, 1});
  }
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0})
    binom_residual = std::max(binom_residual, CoefficientTable::binomial(a, 12).recursion_residual());
  return {v.passed && exact && boundary && binom_residual < 1e-12,
          fmt("restricted exact %s, boundary exact %s, binomial residual %.2e", exact ? "yes" : "no",
              boundary ? "yes" : "no", binom_residual)};
}

Outcome contour_agreement() {
  Rng rng(707);
  double worst512 = 0.0, worst_ratio = 1e300, coarse_ratio = 1e300;
  int assessed = 0, ratio_fail = 0, total = 0, coarse_assessed = 0;
  auto assess = [&](double e128, double e256, double e512) {
    ++total;
    worst512 = std::max(worst512, e512);
    if (e128 > 1e-11) {
      ++assessed;
      const double ratio = e128 / std::max(e256, 1e-300);
      worst_ratio = std::min(worst_ratio, ratio);
      ratio_fail += !(ratio >= 10.0);
    }
  };
  for (int n = 2; n <= 6; ++n)
    for (int t = 0; t < 20; ++t) {
      Spectrum s = sample_spectrum(rng, n, 0.0);
      while (min_gap(s) < 1e-4) s = sample_spectrum(rng, n, 0.0);
      auto at = [](int nodes) { return ContourConfig{.nodes = nodes}; };
      for (int r = 1; r <= n; ++r) {
        const double exact = intermediate_r(s, r);
        // Informational: geometric convergence below roundoff-limited node counts.
        const double e16 = std::abs(contour_r(s, r, at(16)).value - exact);
        const double e32 = std::abs(contour_r(s, r, at(32)).value - exact);
        if (e16 > 1e-11) {
          ++coarse_assessed;
          coarse_ratio = std::min(coarse_ratio, e16 / std::max(e32, 1e-300));
        }
        assess(std::abs(contour_r(s, r, at(128)).value - exact), std::abs(contour_r(s, r, at(256)).value - exact),
               std::abs(contour_r(s, r, at(512)).value - exact));
      }
      for (double a : {0.25, 0.5, 0.75, 1.0}) {
        const double exact = interpolant(s, a);
        assess(std::abs(contour_interpolant(s, a, at(128)).value - exact),
               std::abs(contour_interpolant(s, a, at(256)).value - exact),
               std::abs(contour_interpolant(s, a, at(512)).value - exact));
      }
    }
  return {worst512 < 1e-8 && ratio_fail == 0,
          fmt("%d comparisons, worst error at 512 nodes %.2e; 128/256 ratio assessed on %d (error above "
              "1e-11), min ratio %.1f, failures %d; 16/32 ratio min %.1f over %d",
              total, worst512, assessed, assessed ? worst_ratio : 0.0, ratio_fail,
              coarse_assessed ? coarse_ratio : 0.0, coarse_assessed)};
}

Outcome simplex_agreement() {
  Rng rng(808);
  int groups = 0, bad_groups = 0, min_hits = 20;
  double worst_se = 0.0;
  for (int n = 2; n <= 5; ++n) {
    const Spectrum s = sample_spectrum(rng, n, 0.0);
    for (int r = 1; r <= n; ++r) {
      const double exact = intermediate_r(s, r);
      int hits = 0;
      for (int k = 0; k < 20; ++k) {
        const auto est = simplex_mc(s, r, 1000000, substream_seed(8080 + 10 * n + r, k));
        hits += std::abs(est.value - exact) <= 3.0 * est.std_error;
        worst_se = std::max(worst_se, est.std_error);
      }
      ++groups;
      min_hits = std::min(min_hits, hits);
      bad_groups += hits < 18;
    }
  }
  return {bad_groups == 0 && worst_se < 1e-3,
          fmt("%d (n, r) groups x 20 runs, fewest within 3 stderr %d/20, max stderr %.2e", groups, min_hits,
              worst_se)};
}

Outcome haar_agreement() {
  Rng rng(909);
  double worst_z = 0.0, lo = 1e300, hi_excess = -1e300;
  for (int n = 2; n <= 4; ++n) {
    const Spectrum s = sample_spectrum(rng, n, 0.0);
    const auto est = haar_average_information(s, 100000, 9090 + n);
    worst_z = std::max(worst_z, std::abs(est.value - subentropy(s)) / est.std_error);
    lo = std::min(lo, est.min_sample);
    hi_excess = std::max(hi_excess, est.max_sample - von_neumann_entropy(s));
  }
  return {worst_z <= 3.0 && lo >= 0.0 && hi_excess <= 1e-12,
          fmt("max |estimate - Q| = %.2f stderr; per-sample min %.2e, max - S = %.3e", worst_z, lo, hi_excess)};
}

Outcome degenerate_spectra() {
  struct Case {
    std::vector<long double> l, offsets;
  };
  const std::vector<Case> cases{
      {{0.5L, 0.5L, 0.0L}, {1, -1, 0}},
      {{0.25L, 0.25L, 0.25L, 0.25L}, {1.5L, 0.5L, -0.5L, -1.5L}},
      {{0.4L, 0.4L, 0.1L, 0.1L}, {1, -1, 1, -1}},
      {{0.2L, 0.2L, 0.2L, 0.2L, 0.2L}, {2, 1, 0, -1, -2}},
      {{0.35L, 0.35L, 0.15L, 0.15L, 0.0L, 0.0L}, {1, -1, 1, -1, 0, 0}},
  };
  double worst_contour = 0.0, worst_split = 0.0;
  for (const auto &c : cases) {
    const Spectrum s = Spectrum::from_values(std::vector<double>(c.l.begin(), c.l.end()));
    for (int r = 1; r <= static_cast<int>(s.size()); ++r) {
      const double closed = intermediate_r(s, r);
      worst_contour = std::max(worst_contour, std::abs(contour_r(s, r).value - closed));
      const double limit = static_cast<double>(test::split_limit(c.l, c.offsets, r, 1e-3L));
      worst_split = std::max(worst_split, std::abs(limit - closed));
    }
  }
  return {worst_contour < 1e-8 && worst_split < 1e-6,
          fmt("%zu spectra, contour error %.2e, split-limit error %.2e", cases.size(), worst_contour, worst_split)};
}

Outcome concavity_monotonicity() {
  std::uint64_t fails = 0;
  double worst = -1e300;
  for (int n = 2; n <= 6; ++n)
    for (int r = 1; r <= n; ++r) {
      const auto v = check_concavity(n, r, 1000, 1100 + 10 * n + r);
      fails += v.failures;
      worst = std::max(worst, v.worst_violation);
    }
  Rng rng(1111);
  const auto grid = alpha_grid_005();
  int mono_fail = 0;
  double worst_rise = -1e300;
  for (int n = 2; n <= 6; ++n)
    for (int t = 0; t < 1000; ++t) {
      const auto rs = intermediate_r_all(sample_spectrum(rng, n));
      double prev = interpolant_from_r(rs, grid[0]);
      for (std::size_t k = 1; k < grid.size(); ++k) {
        const double v = interpolant_from_r(rs, grid[k]);
        worst_rise = std::max(worst_rise, v - prev);
        mono_fail += v > prev + 1e-12;
        prev = v;
      }
    }
  return {fails == 0 && mono_fail == 0,
          fmt("concavity failures %llu (worst defect %.2e); alpha monotonicity on 5000 spectra, max rise "
              "%.2e, failures %d",
              (unsigned long long)fails, worst, worst_rise, mono_fail)};
}

Outcome pure_additivity() {
  const auto v = check_pure_additivity(100, 1212);
  return {v.passed && v.worst_violation < 1e-9, fmt("100 cases, worst deviation %.2e", v.worst_violation)};
}

} // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "boundary identities R_1 = S, R_n = Q", 30, boundary_identities},
      {2, "inequality chain", 120, inequality_chain},
      {3, "maximum-value formula", 0, maximum_value},
      {4, "zero-padding recursion", 0, padding_recursion},
      {5, "augmentation invariance of R_alpha", 0, augmentation_invariance},
      {6, "coefficient laws", 0, coefficient_laws},
      {7, "contour oracle agreement", 60, contour_agreement},
      {8, "simplex Monte Carlo agreement", 0, simplex_agreement},
      {9, "Haar measurement oracle", 120, haar_agreement},
      {10, "degenerate-spectrum correctness", 0, degenerate_spectra},
      {11, "concavity and alpha-monotonicity", 0, concavity_monotonicity},
      {12, "pure-state additivity", 0, pure_additivity},
  };
  int failed = 0;
  for (const auto &c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit > 0 && secs >= c.time_limit) {
      o.pass = false;
      o.summary += fmt("; exceeded %.0f s limit", c.time_limit);
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.summary.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
