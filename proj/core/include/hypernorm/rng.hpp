#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace hypernorm {

// Counter-based deterministic generator. Every output is a pure function of
// (seed, stream, counter), so independent consumers (parallel trials, worker
// threads) derive their own generator with `derive` and never share state.
// Replaying a seed reproduces the exact draw sequence.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream ^ 0x6a09e667f3bcc909ULL))) {}

  // Child generator for an independent substream (trial index, thread id...).
  CounterRng derive(std::uint64_t salt) const { return CounterRng(key_, salt); }

  std::uint64_t next_u64() {
    counter_ += 0x9e3779b97f4a7c15ULL;
    return mix(key_ ^ counter_);
  }

  // Uniform in (0, 1]: safe as a log() argument.
  double next_unit() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform in [0, 1).
  double next_half_open() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_half_open();
  }

  // Log-uniform over [lo, hi], lo > 0.
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  bool bernoulli(double p) { return next_half_open() < p; }

  // Standard real Gaussian via Box-Muller; the spare is cached.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = next_unit();
    const double u2 = next_half_open();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Standard complex Gaussian: E|z|^2 = 1.
  std::complex<double> complex_gaussian() {
    const double scale = 0.7071067811865475244;  // 1/sqrt(2)
    return {gaussian() * scale, gaussian() * scale};
  }

  // Uniform phase on the unit circle.
  std::complex<double> phase() {
    const double angle = 2.0 * kPi * next_half_open();
    return {std::cos(angle), std::sin(angle)};
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hypernorm
