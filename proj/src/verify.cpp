#include "qent/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "qent/coefficients.hpp"
#include "qent/entropy.hpp"
#include "qent/error.hpp"
#include "qent/oracles.hpp"
#include "qent/parallel.hpp"

namespace qent {

namespace {

constexpr std::size_t kMaxDetails = 10;
constexpr double kChainSlack = 1e-10;
constexpr double kStrictGap = 1e-9;
constexpr double kStrictEigen = 1e-3;
constexpr double kInvarianceTol = 1e-9;
constexpr double kMidpointSlack = 1e-10;
constexpr double kSecondDiffTol = 1e-6;
constexpr double kContourTol = 1e-8;
constexpr double kAdditivityTol = 1e-9;
constexpr double kEntropyAdditivityTol = 1e-10;

std::string describe(const Spectrum &s) {
  std::ostringstream os;
  os << std::setprecision(17) << "(";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? ", " : "") << s[i];
  os << ")";
  return os.str();
}

struct TrialOutcome {
  double metric = -std::numeric_limits<double>::infinity();
  bool failed = false;
  std::string detail;
};

void fold(PropertyVerdict &v, const std::vector<TrialOutcome> &outcomes) {
  v.trials = outcomes.size();
  v.worst_violation = -std::numeric_limits<double>::infinity();
  for (const auto &o : outcomes) {
    v.worst_violation = std::max(v.worst_violation, o.metric);
    if (o.failed) {
      ++v.failures;
      if (v.details.size() < kMaxDetails) v.details.push_back(o.detail);
    }
  }
  if (outcomes.empty()) v.worst_violation = 0.0;
  v.passed = v.failures == 0;
}

std::vector<double> default_alpha_grid(double step) {
  std::vector<double> grid;
  const int steps = static_cast<int>(std::lround(1.0 / step));
  for (int i = 0; i <= steps; ++i) grid.push_back(std::min(1.0, i * step));
  return grid;
}

} // namespace

Spectrum sample_spectrum(Rng &rng, std::size_t n, double near_degenerate_rate) {
  std::vector<double> v = rng.simplex_point(n);
  if (n >= 2 && rng.uniform() < near_degenerate_rate) {
    const std::size_t i = rng.below(n);
    std::size_t j = rng.below(n - 1);
    if (j >= i) ++j;
    const double mid = 0.5 * (v[i] + v[j]);
    const double split = rng.uniform() < 0.5 ? 0.0 : mid * 1e-7 * rng.uniform();
    v[i] = mid + split;
    v[j] = mid - split;
  }
  return Spectrum::from_values(std::span<const double>(v));
}

double chain_violation(const Spectrum &s) {
  const auto r = intermediate_r_all(s);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < r.size(); ++k) worst = std::max(worst, r[k + 1] - r[k]);
  return r.size() < 2 ? 0.0 : worst;
}

PropertyVerdict check_inequality_chain(int n, std::uint64_t trials, std::uint64_t seed,
                                       const SuiteConfig &cfg) {
  if (n < 2 || n > cfg.max_chain_n)
    throw Error(ErrorCode::Usage, "chain suite needs 2 <= n <= " + std::to_string(cfg.max_chain_n));
  PropertyVerdict v;
  v.property = "inequality_chain(n=" + std::to_string(n) + ")";
  auto outcomes = parallel_map<TrialOutcome>(trials, [&](std::size_t t) {
    Rng rng(substream_seed(seed, t));
    const Spectrum s = sample_spectrum(rng, static_cast<std::size_t>(n), cfg.near_degenerate_rate);
    const auto r = intermediate_r_all(s);
    TrialOutcome o;
    const bool strict = s[0] >= kStrictEigen && s[1] >= kStrictEigen;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < r.size(); ++k) {
      o.metric = std::max(o.metric, r[k + 1] - r[k]);
      min_gap = std::min(min_gap, r[k] - r[k + 1]);
    }
    if (o.metric > kChainSlack) {
      o.failed = true;
      o.detail = "chain broken by " + std::to_string(o.metric) + " at " + describe(s);
    } else if (strict && !(min_gap > kStrictGap)) {
      o.failed = true;
      std::ostringstream os;
      os << "gap " << min_gap << " not strict at " << describe(s);
      o.detail = os.str();
    }
    return o;
  });
  fold(v, outcomes);
  return v;
}

PropertyVerdict check_invariance(int n, int m_max, const std::vector<double> &alpha_grid,
                                 std::uint64_t trials, std::uint64_t seed, const SuiteConfig &cfg) {
  if (n < 1 || m_max < 1) throw Error(ErrorCode::Usage, "invariance suite needs n >= 1, mMax >= 1");
  PropertyVerdict v;
  v.property = "augmentation_invariance(n=" + std::to_string(n) + ")";
  auto outcomes = parallel_map<TrialOutcome>(trials, [&](std::size_t t) {
    Rng rng(substream_seed(seed, t));
    const Spectrum s = sample_spectrum(rng, static_cast<std::size_t>(n), cfg.near_degenerate_rate);
    const auto base = intermediate_r_all(s);
    TrialOutcome o;
    o.metric = 0.0;
    for (int m = 1; m <= m_max; ++m) {
      const auto padded = intermediate_r_all(pad_with_zeros(s, static_cast<std::size_t>(m)));
      for (double a : alpha_grid) {
        const double dev = std::abs(interpolant_from_r(padded, a) - interpolant_from_r(base, a));
        if (dev > o.metric) o.metric = dev;
        if (dev >= kInvarianceTol && !o.failed) {
          o.failed = true;
          std::ostringstream os;
          os << "alpha=" << a << " m=" << m << " deviation " << dev << " at " << describe(s);
          o.detail = os.str();
        }
      }
    }
    return o;
  });
  fold(v, outcomes);
  return v;
}

PropertyVerdict check_invariance_negative_control(int n, int m_max, std::uint64_t trials,
                                                  std::uint64_t seed, const SuiteConfig &cfg) {
  if (n < 2 || m_max < 1) throw Error(ErrorCode::Usage, "invariance suite needs n >= 2, mMax >= 1");
  PropertyVerdict v;
  v.property = "invariance_negative_control(delta_r2,n=" + std::to_string(n) + ")";
  v.expect_failure = true;
  auto outcomes = parallel_map<TrialOutcome>(trials, [&](std::size_t t) {
    Rng rng(substream_seed(seed, t));
    const Spectrum s = sample_spectrum(rng, static_cast<std::size_t>(n), cfg.near_degenerate_rate);
    const double base = intermediate_r(s, 2);
    TrialOutcome o;
    o.metric = 0.0;
    for (int m = 1; m <= m_max; ++m) {
      const double dev = std::abs(intermediate_r(pad_with_zeros(s, static_cast<std::size_t>(m)), 2) - base);
      o.metric = std::max(o.metric, dev);
    }
    if (o.metric >= kInvarianceTol) {
      o.failed = true;
      std::ostringstream os;
      os << "R_2 moved by " << o.metric << " at " << describe(s);
      o.detail = os.str();
    }
    return o;
  });
  fold(v, outcomes);
  return v;
}

PropertyVerdict check_coefficient_recursion(int max_n, const std::vector<double> &alphas,
                                            const std::vector<RestrictedCase> &restricted) {
  if (max_n < 2) throw Error(ErrorCode::Usage, "coefficient suite needs maxN >= 2");
  constexpr double tol = 1e-12;
  PropertyVerdict v;
  v.property = "coefficient_recursion(maxN=" + std::to_string(max_n) + ")";
  std::vector<TrialOutcome> outcomes;

  for (double a : alphas) {
    const auto table = CoefficientTable::binomial(a, max_n);
    TrialOutcome o;
    o.metric = table.recursion_residual();
    for (const auto &row : table.rows) {
      double sum = 0.0;
      for (double b : row) {
        sum += b;
        o.metric = std::max(o.metric, -b);
      }
      o.metric = std::max(o.metric, std::abs(sum - 1.0));
    }
    if (o.metric > tol) {
      o.failed = true;
      o.detail = "binomial alpha=" + std::to_string(a) + " defect " + std::to_string(o.metric);
    }
    outcomes.push_back(o);
  }

  for (const auto &c : restricted) {
    const auto table = CoefficientTable::restricted(c.N, c.r_hat);
    TrialOutcome o;
    o.metric = 0.0;
    bool ok = table.recursion_exact();
    for (const auto &row : table.exact_rows) {
      std::uint64_t sum = 0;
      for (auto x : row.numerators) sum += x;
      ok = ok && sum == row.denominator;
    }
    const auto &top = table.exact_rows.back();
    for (int r = 1; r <= c.N; ++r) {
      const std::uint64_t expect = (r == c.r_hat) ? top.denominator : 0;
      ok = ok && top.numerators[static_cast<std::size_t>(r - 1)] == expect;
    }
    if (!ok) {
      o.failed = true;
      o.detail = "restricted N=" + std::to_string(c.N) + " rHat=" + std::to_string(c.r_hat) +
                 " violates the exact recursion, normalization or boundary";
    }
    outcomes.push_back(o);
  }
  fold(v, outcomes);
  return v;
}

PropertyVerdict check_concavity(int n, int r, std::uint64_t trials, std::uint64_t seed,
                                const SuiteConfig &cfg) {
  if (n < 1 || r < 1 || r > n) throw Error(ErrorCode::InvalidR, "concavity suite needs 1 <= r <= n");
  PropertyVerdict v;
  v.property = "concavity(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
  const auto nn = static_cast<std::size_t>(n);
  auto outcomes = parallel_map<TrialOutcome>(trials, [&](std::size_t t) {
    Rng rng(substream_seed(seed, t));
    const Spectrum s1 = sample_spectrum(rng, nn, cfg.near_degenerate_rate);
    const Spectrum s2 = sample_spectrum(rng, nn, cfg.near_degenerate_rate);
    // Mix in a random (unsorted) labelling of s2 so the pair is generic.
    std::vector<double> a(s1.values().data(), s1.values().data() + nn);
    std::vector<double> b(s2.values().data(), s2.values().data() + nn);
    for (std::size_t i = nn; i > 1; --i) std::swap(b[i - 1], b[rng.below(i)]);
    const double tmix = 0.05 + 0.9 * rng.uniform();
    std::vector<double> mix(nn);
    for (std::size_t i = 0; i < nn; ++i) mix[i] = tmix * a[i] + (1.0 - tmix) * b[i];

    TrialOutcome o;
    const double lhs = intermediate_r(Spectrum::from_values(std::span<const double>(mix)), r);
    const double rhs = tmix * intermediate_r(s1, r) +
                       (1.0 - tmix) * intermediate_r(Spectrum::from_values(std::span<const double>(b)), r);
    const double defect = rhs - lhs;
    o.metric = defect;
    if (defect > kMidpointSlack) {
      o.failed = true;
      std::ostringstream os;
      os << "midpoint defect " << defect << " between " << describe(s1) << " and " << describe(s2);
      o.detail = os.str();
    }

    // Second difference along a random zero-sum direction.
    const std::vector<double> x = rng.simplex_point(nn);
    std::vector<double> d(nn);
    double mean = 0.0;
    for (auto &di : d) {
      di = rng.normal();
      mean += di;
    }
    mean /= static_cast<double>(nn);
    double amax = 0.0;
    for (auto &di : d) {
      di -= mean;
      amax = std::max(amax, std::abs(di));
    }
    if (amax > 0.0 && nn >= 2) {
      const double h = 1e-3;
      double scale = 1.0 / amax;
      for (std::size_t i = 0; i < nn; ++i)
        if (d[i] != 0.0) scale = std::min(scale, x[i] / (h * std::abs(d[i])));
      std::vector<double> plus(nn), minus(nn);
      for (std::size_t i = 0; i < nn; ++i) {
        plus[i] = std::max(0.0, x[i] + h * scale * d[i]);
        minus[i] = std::max(0.0, x[i] - h * scale * d[i]);
      }
      auto eval = [&](const std::vector<double> &p) {
        double sum = 0.0;
        for (double q : p) sum += q;
        std::vector<double> q = p;
        for (double &qi : q) qi /= sum;
        return intermediate_r(Spectrum::from_values(std::span<const double>(q)), r);
      };
      const double second = eval(plus) - 2.0 * eval(x) + eval(minus);
      o.metric = std::max(o.metric, second);
      if (second > kSecondDiffTol && !o.failed) {
        o.failed = true;
        std::ostringstream os;
        os << "second difference " << second << " along a direction at (";
        for (std::size_t i = 0; i < nn; ++i) os << (i ? ", " : "") << x[i];
        os << ")";
        o.detail = os.str();
      }
    }
    return o;
  });
  fold(v, outcomes);
  return v;
}

PropertyVerdict check_oracle_agreement(int n, std::uint64_t trials, std::uint64_t mc_samples,
                                       std::uint64_t seed, const SuiteConfig &cfg) {
  if (n < 1 || n > cfg.max_oracle_n)
    throw Error(ErrorCode::Usage, "oracle suite needs 1 <= n <= " + std::to_string(cfg.max_oracle_n));
  PropertyVerdict v;
  v.property = "oracle_agreement(n=" + std::to_string(n) + ")";
  const auto nn = static_cast<std::size_t>(n);

  struct Outcome {
    TrialOutcome base;
    int simplex_total = 0;
    int simplex_out = 0;
    int haar_out = 0;
  };

  auto outcomes = parallel_map<Outcome>(trials, [&](std::size_t t) {
    Rng rng(substream_seed(seed, t));
    Spectrum s = Spectrum::pure(1);
    if (t == 0 && n >= 2) {
      // Degenerate case with a zero eigenvalue, e.g. (1/2, 1/2, 0) for n = 3.
      std::vector<double> deg(nn, 1.0 / static_cast<double>(n - 1));
      deg.back() = 0.0;
      s = Spectrum::from_values(std::span<const double>(deg));
    } else {
      s = sample_spectrum(rng, nn, cfg.near_degenerate_rate);
    }
    const auto closed = intermediate_r_all(s);
    Outcome o;
    o.base.metric = 0.0;
    for (int r = 1; r <= n; ++r) {
      const double exact = closed[static_cast<std::size_t>(r - 1)];
      const double diff = std::abs(contour_r(s, r).value - exact);
      o.base.metric = std::max(o.base.metric, diff);
      if (diff >= kContourTol && !o.base.failed) {
        o.base.failed = true;
        std::ostringstream os;
        os << "contour r=" << r << " off by " << diff << " at " << describe(s);
        o.base.detail = os.str();
      }
      const auto mc = simplex_mc(s, r, mc_samples, substream_seed(seed ^ 0x5eedULL, t * 64 + r));
      ++o.simplex_total;
      if (std::abs(mc.value - exact) > 3.0 * mc.std_error + 1e-15) ++o.simplex_out;
    }
    const auto haar = haar_average_information(s, mc_samples, substream_seed(seed ^ 0x4aa2ULL, t));
    if (std::abs(haar.value - closed.back()) > 3.0 * haar.std_error + 1e-15) ++o.haar_out;
    return o;
  });

  std::vector<TrialOutcome> base;
  int simplex_total = 0, simplex_out = 0, haar_out = 0;
  for (const auto &o : outcomes) {
    base.push_back(o.base);
    simplex_total += o.simplex_total;
    simplex_out += o.simplex_out;
    haar_out += o.haar_out;
  }
  fold(v, base);
  const int simplex_allowed = std::max(1, simplex_total / 10);
  const int haar_allowed = std::max(1, static_cast<int>(trials) / 10);
  std::ostringstream note;
  note << "simplexMC beyond 3 stderr: " << simplex_out << "/" << simplex_total
       << "; haarMC beyond 3 stderr: " << haar_out << "/" << trials;
  v.notes.push_back(note.str());
  if (simplex_out > simplex_allowed) {
    v.failures += static_cast<std::uint64_t>(simplex_out);
    if (v.details.size() < kMaxDetails) v.details.push_back("too many simplexMC outliers");
  }
  if (haar_out > haar_allowed) {
    v.failures += static_cast<std::uint64_t>(haar_out);
    if (v.details.size() < kMaxDetails) v.details.push_back("too many haarMC outliers");
  }
  v.passed = v.failures == 0;
  return v;
}

PropertyVerdict check_pure_additivity(std::uint64_t trials, std::uint64_t seed,
                                      const SuiteConfig &cfg) {
  PropertyVerdict v;
  v.property = "pure_state_additivity";
  const auto grid = default_alpha_grid(0.1);
  auto outcomes = parallel_map<TrialOutcome>(trials, [&](std::size_t t) {
    Rng rng(substream_seed(seed, t));
    const std::size_t n1 = 1 + rng.below(4);
    const std::size_t n2 = 1 + rng.below(3);
    const Spectrum s1 = sample_spectrum(rng, n1, cfg.near_degenerate_rate);
    const Spectrum product = tensor_spectrum(s1, Spectrum::pure(n2));
    const auto r1 = intermediate_r_all(s1);
    const auto rp = intermediate_r_all(product);
    TrialOutcome o;
    o.metric = 0.0;
    for (double a : grid) {
      const double dev = std::abs(interpolant_from_r(rp, a) - interpolant_from_r(r1, a));
      o.metric = std::max(o.metric, dev);
      if (dev >= kAdditivityTol && !o.failed) {
        o.failed = true;
        std::ostringstream os;
        os << "alpha=" << a << " deviation " << dev << " for " << describe(s1) << " (x) pure(" << n2 << ")";
        o.detail = os.str();
      }
    }
    // Entropy is additive for arbitrary pairs.
    const Spectrum s2 = sample_spectrum(rng, 1 + rng.below(3), cfg.near_degenerate_rate);
    const double sdev = std::abs(von_neumann_entropy(tensor_spectrum(s1, s2)) -
                                 von_neumann_entropy(s1) - von_neumann_entropy(s2));
    o.metric = std::max(o.metric, sdev);
    if (sdev >= kEntropyAdditivityTol && !o.failed) {
      o.failed = true;
      o.detail = "entropy additivity off by " + std::to_string(sdev) + " for " + describe(s1) +
                 " (x) " + describe(s2);
    }
    return o;
  });
  fold(v, outcomes);

  const Spectrum half = Spectrum::from_values({0.5, 0.5});
  const double q_product = subentropy(tensor_spectrum(half, half));
  const double q_sum = 2.0 * subentropy(half);
  std::ostringstream os;
  os << std::setprecision(10) << "Q((1/2,1/2) (x) (1/2,1/2)) = " << q_product
     << " vs Q(1/2,1/2) + Q(1/2,1/2) = " << q_sum << " (Q is not additive)";
  v.notes.push_back(os.str());
  return v;
}

bool is_known_suite(const std::string &suite) {
  static const char *names[] = {"chain",     "invariance", "coefficients", "concavity",
                                "oracles",   "additivity", "all"};
  return std::find(std::begin(names), std::end(names), suite) != std::end(names);
}

std::vector<PropertyVerdict> run_suite(const std::string &suite, int n, std::uint64_t trials,
                                       std::uint64_t seed, const SuiteConfig &cfg) {
  if (!is_known_suite(suite)) throw Error(ErrorCode::Usage, "unknown suite '" + suite + "'");
  const bool all = suite == "all";
  std::vector<PropertyVerdict> out;
  std::uint64_t stream = 0;
  auto sub = [&] { return substream_seed(seed, 1000 + stream++); };

  if (all || suite == "chain")
    out.push_back(check_inequality_chain(std::clamp(n, 2, cfg.max_chain_n), trials, sub(), cfg));
  if (all || suite == "invariance") {
    out.push_back(check_invariance(std::max(n, 1), 3, default_alpha_grid(0.05), trials, sub(), cfg));

    out.push_back(check_invariance_negative_control(std::max(n, 3), 3, trials, sub(), cfg));
  }
  if (all || suite == "coefficients") {
    std::vector<RestrictedCase> cases;
    const int top = std::clamp(n, 2, 12);
    for (int N = 1; N <= top; ++N)
      for (int r_hat = 1; r_hat <= N; ++r_hat) cases.push_back({N, r_hat});
    out.push_back(check_coefficient_recursion(std::max(n, 12), {0.0, 0.25, 0.3, 0.5, 0.75, 1.0}, cases));
  }
  if (all || suite == "concavity") {
    const int nn = std::max(n, 1);
    for (int r = 1; r <= nn; ++r) out.push_back(check_concavity(nn, r, trials, sub(), cfg));
  }
  if (all || suite == "oracles") {
    const std::uint64_t oracle_trials = std::min<std::uint64_t>(trials, 20);
    out.push_back(check_oracle_agreement(std::clamp(n, 1, cfg.max_oracle_n), oracle_trials,
                                         cfg.mc_samples, sub(), cfg));
  }
  if (all || suite == "additivity") out.push_back(check_pure_additivity(trials, sub(), cfg));
  return out;
}

} // namespace qent
