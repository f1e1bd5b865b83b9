#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cip {

// SplitMix64 finalizer, used as a stateless mixing function for key derivation.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Deterministic Gaussian source for one (seed, stream_id) pair. Stream keys
// are derived by splitmix64 mixing, so distinct stream ids under one seed
// give independent streams. Normal draws use the Marsaglia polar method,
// which is exact in distribution.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t seed, std::uint64_t stream_id)
      : gen_(mix64(mix64(seed) ^ mix64(stream_id))) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double standard_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cip
