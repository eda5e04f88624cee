#ifndef GLSEG_RNG_HPP
#define GLSEG_RNG_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

namespace glseg {

/// SplitMix64 finalizer; used to derive well-mixed engine seeds from
/// (seed, stream) pairs so independent streams never overlap trivially.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Deterministic random source: mt19937_64 plus explicit value mappings.
/// The engine's seeding and output are fully specified by the standard and
/// no std distribution is used, so streams are bit-reproducible across
/// platforms and standard-library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : engine_(splitmix64(splitmix64(seed) ^
                           (stream + 1) * 0x9E3779B97F4A7C15ull)) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double unit() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1), both endpoints excluded.
  double unit_open() {
    return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on the open interval (lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit_open(); }

  /// Standard normal deviate (Box-Muller).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(unit_open()));
    const double t = 2.0 * std::numbers::pi * unit_open();
    spare_ = r * std::sin(t);
    have_spare_ = true;
    return r * std::cos(t);
  }

  /// Unbiased integer in [0, m), m > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t m) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t rem = (max % m + 1) % m;
    for (;;) {
      const std::uint64_t x = bits();
      if (rem == 0 || x <= max - rem) return x % m;
    }
  }

  /// Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[below(i)]);
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace glseg

#endif
