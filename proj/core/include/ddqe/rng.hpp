#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace ddqe {

/// Deterministic stream of random variates. Identical (seed, stream) pairs
/// yield identical sequences on every platform: the engine is mt19937_64
/// (sequence fixed by the standard) and all variate transforms are spelled
/// out here rather than delegated to implementation-defined distributions.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(mix(seed, stream)) {}

  std::uint64_t seed_mix() const { return seed_mix_; }

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in (0, 1]: 53-bit mantissa, never exactly 0.
  double uniform() {
    return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1p-53;
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * (uniform() - 0x1p-53); }

  /// Normal variate via Box-Muller (explicit, platform-stable).
  double gaussian(double mean = 0.0, double sd = 1.0) {
    if (sd < 0.0) throw std::domain_error("gaussian: sd < 0");
    if (have_spare_) {
      have_spare_ = false;
      return mean + sd * spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return mean + sd * (r * std::cos(a));
  }

 private:
  static std::uint64_t splitmix(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed;
    std::uint64_t a = splitmix(x);
    x ^= stream * 0xda942042e4dd58b5ull + 0x9e3779b97f4a7c15ull;
    seed_mix_ = a ^ splitmix(x);
    return seed_mix_;
  }

  std::uint64_t seed_mix_ = 0;
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace ddqe
