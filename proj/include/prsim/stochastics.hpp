// Beta-distribution kernel and seeded random streams.
//
// Everything the simulator knows about randomness and special functions
// lives here: the beta density/CDF, beta sampling, the circular window
// density used to measure topical specialization, and the deterministic
// seed-splitting scheme.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace prsim {

inline constexpr double kDefaultHalfwidth = 0.1;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Shape parameters of a beta distribution. The log of the beta function is
/// cached at construction because every CDF evaluation needs it.
class BetaParams {
 public:
  BetaParams(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double log_beta() const noexcept { return log_beta_; }
  double mean() const noexcept { return alpha_ / (alpha_ + beta_); }

  friend bool operator==(const BetaParams& a, const BetaParams& b) noexcept {
    return a.alpha_ == b.alpha_ && a.beta_ == b.beta_;
  }

 private:
  double alpha_;
  double beta_;
  double log_beta_;
};

/// Density B(alpha, beta, x) on [0, 1].
double beta_pdf(const BetaParams& p, double x);

/// Regularized incomplete beta I_x(alpha, beta).
double beta_cdf(const BetaParams& p, double x);

/// Upper tail 1 - I_x(alpha, beta), computed without cancellation.
double beta_sf(const BetaParams& p, double x);

/// Probability mass of [lo, hi] with 0 <= lo <= hi <= 1. Uses whichever tail
/// keeps both endpoints accurate, so masses far out in either tail do not
/// collapse to zero.
double beta_interval_mass(const BetaParams& p, double lo, double hi);

struct Interval {
  double lo;
  double hi;
  double length() const noexcept { return hi - lo; }
};

/// The support of the density window around x: one interval in the interior,
/// two when the window wraps around 0 or 1. Total length is always
/// 2 * halfwidth.
struct DensityWindow {
  std::array<Interval, 2> parts{};
  std::size_t count = 0;

  double measure() const noexcept;
};

DensityWindow density_window(double x, double halfwidth = kDefaultHalfwidth);

/// Mass of the beta distribution inside density_window(x, halfwidth).
/// Equals 0.2 for the uniform distribution at every x when halfwidth = 0.1.
double window_density(const BetaParams& p, double x, double halfwidth = kDefaultHalfwidth);

/// Single-owner random stream. Satisfies UniformRandomBitGenerator so it can
/// drive <random> distributions directly.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  std::uint64_t seed() const noexcept { return seed_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on (0, 1]; used for "accept iff u <= p" lotteries so that p = 0
  /// never accepts and p = 1 always does.
  double uniform_left_open();
  double uniform(double lo, double hi);
  bool bernoulli(double p);
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

double beta_sample(const BetaParams& p, RngStream& rng);

/// Well-known stream indices used with derive_seed.
enum class Substream : std::uint64_t {
  Authors = 0,
  Journals = 1,
  CurrentSystem = 2,
  AlternativeSystem = 3,
};

/// Counter-based seed split: splitmix64 applied to master, then mixed with
/// (replicate * 16 + stream). Pure and stable across builds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate, std::uint64_t stream);
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate, Substream stream);

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace prsim
