#include "qent/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <vector>

#include "qent/error.hpp"
#include "qent/parallel.hpp"
#include "qent/symmetric.hpp"

namespace qent {

namespace {

using cplx = std::complex<double>;

constexpr std::uint64_t kChunk = 1 << 14;
constexpr std::uint64_t kMinSamples = 100;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

void check_r(const Spectrum &s, int r) {
  if (r < 1 || r > static_cast<int>(s.size())) {
    std::ostringstream os;
    os << "r = " << r << " outside [1, " << s.size() << "]";
    throw Error(ErrorCode::InvalidR, os.str());
  }
}

// Running moments of one chunk; merged in chunk order.
struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }

  void merge(const Moments &o) {
    if (o.count == 0) return;
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
    lo = std::min(lo, o.lo);
    hi = std::max(hi, o.hi);
  }

  double std_error() const {
    if (count < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  }
};

template <typename SampleFn>
Moments run_chunks(std::uint64_t samples, std::uint64_t seed, SampleFn sample) {
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  auto parts = parallel_map<Moments>(static_cast<std::size_t>(chunks), [&](std::size_t k) {
    Rng rng(substream_seed(seed, k));
    const std::uint64_t begin = k * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    SampleFn local = sample; // per-chunk scratch state
    Moments m;
    for (std::uint64_t i = begin; i < end; ++i) m.add(local(rng));
    return m;
  });
  Moments total;
  for (const auto &p : parts) total.merge(p);
  return total;
}

void check_samples(std::uint64_t samples) {
  if (samples < kMinSamples) {
    std::ostringstream os;
    os << "need at least " << kMinSamples << " samples, got " << samples;
    throw Error(ErrorCode::TooFewSamples, os.str());
  }
}

} // namespace

std::string_view to_string(OracleMethod m) noexcept {
  switch (m) {
  case OracleMethod::contour: return "contour";
  case OracleMethod::simplexMC: return "simplexMC";
  case OracleMethod::haarMC: return "haarMC";
  }
  return "unknown";
}

std::complex<double> contour_log_integral(const Spectrum &s, const ContourConfig &cfg,
                                          const std::function<cplx(cplx)> &integrand) {
  if (s.rank() == 0) throw Error(ErrorCode::DegenerateContour, "spectrum has no nonzero eigenvalue");
  if (cfg.nodes < 4) throw Error(ErrorCode::Usage, "contour needs at least 4 nodes");
  const double lo = s.min_nonzero();
  const double hi = s[0];
  const int nodes = cfg.nodes;
  const cplx i1(0.0, 1.0);
  cplx acc = 0.0;

  if (cfg.shape == ContourShape::log_ellipse) {
    const double a = std::log(lo);
    const double b = std::log(hi);
    const double centre = 0.5 * (a + b);
    const double focal = std::max(0.5 * (b - a), 1.0);
    // Nearest singularities outside: ln(lambda) +- 2 pi i. Sit halfway (in
    // elliptic coordinates) between the focal segment and those.
    const double eta = 0.5 * std::asinh(2.0 * std::numbers::pi / focal);
    for (int k = 0; k < nodes; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / nodes;
      const cplx zeta(eta, theta);
      const cplx w = centre + focal * std::cosh(zeta);
      const cplx dw = i1 * focal * std::sinh(zeta);
      const cplx z = std::exp(w);
      acc += w * integrand(z) * z * dw;
    }
  } else {
    if (!(cfg.margin_factor > 0.0 && cfg.margin_factor < 1.0))
      throw Error(ErrorCode::Usage, "margin factor must lie in (0, 1)");
    const double left = cfg.margin_factor * lo;
    const double right = hi + (lo - left);
    const double centre = 0.5 * (left + right);
    const double radius = 0.5 * (right - left);
    for (int k = 0; k < nodes; ++k) {
      const double theta = 2.0 * std::numbers::pi * k / nodes;
      const cplx e = std::polar(1.0, theta);
      const cplx z = centre + radius * e;
      acc += std::log(z) * integrand(z) * (i1 * radius * e);
    }
  }
  return acc / (i1 * static_cast<double>(nodes));
}

OracleEstimate contour_r(const Spectrum &s, int r, const ContourConfig &cfg) {
  check_r(s, r);
  const Eigen::VectorXd &lam = s.values();
  const Eigen::Index n = lam.size();
  Eigen::VectorXcd nu(n);
  const auto integrand = [&](cplx z) {
    // Eigenvalues of (I - rho/z)^-1; a zero eigenvalue gives exactly 1.
    for (Eigen::Index j = 0; j < n; ++j) nu(j) = lam(j) < kZeroEigenvalue ? cplx(1.0) : z / (z - lam(j));
    return symmetric_coefficient(nu, r);
  };
  const cplx integral = contour_log_integral(s, cfg, integrand);
  OracleEstimate est;
  est.value = -integral.real() / binomial(static_cast<int>(n) - 1, r - 1);
  est.samples = static_cast<std::uint64_t>(cfg.nodes);
  est.method = OracleMethod::contour;
  return est;
}

OracleEstimate contour_interpolant(const Spectrum &s, double alpha, const ContourConfig &cfg) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::AlphaOutOfRange, "contour interpolant needs alpha in (0, 1]");
  std::vector<double> nonzero;
  for (std::size_t j = 0; j < s.size(); ++j)
    if (s[j] >= kZeroEigenvalue) nonzero.push_back(s[j]);
  const double constant = std::pow(1.0 - alpha, static_cast<double>(nonzero.size()));
  const auto integrand = [&](cplx z) {
    cplx det = 1.0;
    for (double l : nonzero) det *= (1.0 - alpha) + alpha * z / (z - l);
    // The constant term integrates to zero; removing it avoids cancellation
    // after dividing by a small alpha.
    return (det - constant) / alpha;
  };
  const cplx integral = contour_log_integral(s, cfg, integrand);
  OracleEstimate est;
  est.value = -integral.real();
  est.samples = static_cast<std::uint64_t>(cfg.nodes);
  est.method = OracleMethod::contour;
  return est;
}

OracleEstimate simplex_mc(const Spectrum &s, int r, std::uint64_t samples, std::uint64_t seed) {
  check_r(s, r);
  check_samples(samples);
  const std::size_t n = s.size();
  const Eigen::VectorXd lam = s.values();

  const Moments m = run_chunks(samples, seed, [&, idx = std::vector<std::size_t>(),
                                                x = std::vector<double>()](Rng &rng) mutable {
    if (idx.size() != n) {
      idx.resize(n);
      x.resize(static_cast<std::size_t>(r));
    }
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Partial Fisher-Yates: the first r entries form a uniform r-subset.
    for (int k = 0; k < r; ++k) {
      const std::size_t j = static_cast<std::size_t>(k) + rng.below(n - static_cast<std::size_t>(k));
      std::swap(idx[static_cast<std::size_t>(k)], idx[j]);
    }
    rng.simplex_point(x);
    double y = 0.0;
    double cross = 0.0;
    for (int k = 0; k < r; ++k) {
      const double l = lam(static_cast<Eigen::Index>(idx[static_cast<std::size_t>(k)]));
      const double xi = x[static_cast<std::size_t>(k)];
      y += l * xi;
      if (xi > 0.0) cross += l * xi * std::log(xi);
    }
    const double head = y > 0.0 ? -y * std::log(y) : 0.0;
    return head + cross;
  });

  const double scale = static_cast<double>(n);
  OracleEstimate est;
  est.value = scale * m.mean;
  est.std_error = scale * m.std_error();
  est.samples = samples;
  est.method = OracleMethod::simplexMC;
  est.min_sample = scale * m.lo;
  est.max_sample = scale * m.hi;
  return est;
}

Eigen::MatrixXcd haar_unitary(Eigen::Index n, Rng &rng) {
  Eigen::MatrixXcd g(n, n);
  const double scale = std::numbers::sqrt2 / 2.0;
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = rng.normal();
      const double im = rng.normal();
      g(i, j) = cplx(re, im) * scale;
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  const auto &packed = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const cplx d = packed(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

double measurement_information(const Eigen::VectorXd &probs, const Eigen::MatrixXcd &basis) {
  const Eigen::Index n = probs.size();
  double info = 0.0;
  for (Eigen::Index k = 0; k < basis.cols(); ++k) {
    double pk = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) pk += probs(i) * std::norm(basis(i, k));
    if (pk <= 0.0) continue;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double overlap = std::norm(basis(i, k));
      const double joint = probs(i) * overlap;
      if (joint > 0.0) info += joint * std::log(overlap / pk);
    }
  }
  return info;
}

OracleEstimate haar_average_information(const Spectrum &s, std::uint64_t samples,
                                        std::uint64_t seed) {
  check_samples(samples);
  const Eigen::VectorXd lam = s.values();
  const Eigen::Index n = lam.size();
  const Moments m = run_chunks(samples, seed, [&](Rng &rng) {
    return measurement_information(lam, haar_unitary(n, rng));
  });
  OracleEstimate est;
  est.value = m.mean;
  est.std_error = m.std_error();
  est.samples = samples;
  est.method = OracleMethod::haarMC;
  est.min_sample = m.lo;
  est.max_sample = m.hi;
  return est;
}

} // namespace qent
