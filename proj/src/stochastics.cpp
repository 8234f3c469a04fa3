#include "prsim/stochastics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace prsim {

namespace {

void require_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + ": x must lie in [0, 1], got " + std::to_string(x));
  }
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double incomplete_beta_cf(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  constexpr int kMaxIter = 2000;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return h;
}

struct Tails {
  double lower;
  double upper;
};

// Both tails at once. The smaller tail is always the one evaluated directly,
// so it keeps full relative precision.
Tails beta_tails(const BetaParams& p, double x) {
  if (x <= 0.0) return {0.0, 1.0};
  if (x >= 1.0) return {1.0, 0.0};
  const double a = p.alpha();
  const double b = p.beta();
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - p.log_beta());
  if (x < (a + 1.0) / (a + b + 2.0)) {
    const double lower = std::clamp(front * incomplete_beta_cf(a, b, x) / a, 0.0, 1.0);
    return {lower, 1.0 - lower};
  }
  const double upper = std::clamp(front * incomplete_beta_cf(b, a, 1.0 - x) / b, 0.0, 1.0);
  return {1.0 - upper, upper};
}

}  // namespace

BetaParams::BetaParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
    throw DomainError("beta parameters must be positive and finite, got (" + std::to_string(alpha) +
                      ", " + std::to_string(beta) + ")");
  }
  log_beta_ = std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
}

double beta_pdf(const BetaParams& p, double x) {
  require_unit(x, "beta_pdf");
  const double a = p.alpha();
  const double b = p.beta();
  if ((x == 0.0 && a < 1.0) || (x == 1.0 && b < 1.0)) {
    return std::numeric_limits<double>::infinity();
  }
  // 0 * log(0) is taken as 0 so that a == 1 or b == 1 gives finite edge values.
  const double left = (a == 1.0) ? 0.0 : (a - 1.0) * std::log(x);
  const double right = (b == 1.0) ? 0.0 : (b - 1.0) * std::log1p(-x);
  return std::exp(left + right - p.log_beta());
}

double beta_cdf(const BetaParams& p, double x) {
  require_unit(x, "beta_cdf");
  return beta_tails(p, x).lower;
}

double beta_sf(const BetaParams& p, double x) {
  require_unit(x, "beta_sf");
  return beta_tails(p, x).upper;
}

double beta_interval_mass(const BetaParams& p, double lo, double hi) {
  require_unit(lo, "beta_interval_mass");
  require_unit(hi, "beta_interval_mass");
  if (hi <= lo) return 0.0;
  const Tails at_lo = beta_tails(p, lo);
  const Tails at_hi = beta_tails(p, hi);
  const double mass = at_lo.upper <= 0.5 ? at_lo.upper - at_hi.upper : at_hi.lower - at_lo.lower;
  return std::max(mass, 0.0);
}

double DensityWindow::measure() const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) total += parts[i].length();
  return total;
}

DensityWindow density_window(double x, double halfwidth) {
  require_unit(x, "density_window");
  if (!(halfwidth > 0.0 && halfwidth < 0.5)) {
    throw DomainError("density_window: halfwidth must lie in (0, 0.5), got " + std::to_string(halfwidth));
  }
  DensityWindow w;
  if (x > 1.0 - halfwidth) {
    w.parts[0] = {x - halfwidth, 1.0};
    w.parts[1] = {0.0, x + halfwidth - 1.0};
    w.count = 2;
  } else if (x < halfwidth) {
    w.parts[0] = {0.0, x + halfwidth};
    w.parts[1] = {x + 1.0 - halfwidth, 1.0};
    w.count = 2;
  } else {
    w.parts[0] = {x - halfwidth, x + halfwidth};
    w.count = 1;
  }
  return w;
}

double window_density(const BetaParams& p, double x, double halfwidth) {
  const DensityWindow w = density_window(x, halfwidth);
  double mass = 0.0;
  for (std::size_t i = 0; i < w.count; ++i) {
    mass += beta_interval_mass(p, w.parts[i].lo, w.parts[i].hi);
  }
  // Keep the result strictly positive so 1/z stays finite for extreme shapes.
  return std::clamp(mass, std::numeric_limits<double>::min(), 1.0);
}

double RngStream::uniform01() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_left_open() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform01();
}

bool RngStream::bernoulli(double p) {
  return uniform01() < p;
}

std::size_t RngStream::below(std::size_t n) {
  if (n == 0) throw std::invalid_argument("RngStream::below: empty range");
  const auto idx = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
  return std::min(idx, n - 1);
}

double beta_sample(const BetaParams& p, RngStream& rng) {
  std::gamma_distribution<double> gx(p.alpha(), 1.0);
  std::gamma_distribution<double> gy(p.beta(), 1.0);
  for (;;) {
    const double x = gx(rng);
    const double y = gy(rng);
    if (x + y > 0.0) return x / (x + y);
  }
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(replicate * 16 + stream + 1));
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate, Substream stream) {
  return derive_seed(master, replicate, static_cast<std::uint64_t>(stream));
}

}  // namespace prsim
