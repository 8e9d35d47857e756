#pragma once

#include <cstdint>
#include <random>

namespace uhw {

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based seed split: mix64(master + (task + 1) * 0x9E3779B97F4A7C15).
///
/// For a fixed master the map task -> seed is injective (odd increment, then a
/// bijection), so replicate streams never share a seed. derive_seed(0, 0) is
/// the first SplitMix64 output for state 0, 0xE220A8397B1DCDAF.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t task) noexcept {
  return mix64(master + (task + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Portable random stream. std::mt19937_64 output is fixed by the standard;
/// all conversions to reals are done here rather than through the
/// implementation-defined std:: distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection (no modulo bias).
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = bound == 0 ? 0 : (~std::uint64_t{0} - bound + 1) % bound;
    for (;;) {
      const std::uint64_t r = engine_();
      if (r >= limit) return r % bound;
    }
  }

  /// Standard normal via Box-Muller; used only for test geometry, never for
  /// the heavy-tailed laws under study.
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace uhw
