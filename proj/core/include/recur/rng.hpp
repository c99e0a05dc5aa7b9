#pragma once

// Counter-splittable generator for the Monte Carlo paths. Streams are derived
// per sample index, so sharding across workers cannot change results.

#include <cstdint>

namespace recur {

inline constexpr const char* kRngName = "splitmix64-v1";

struct SplitMix64 {
  uint64_t state = 0;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform 1-based symbol; the 2^-64 modulo bias is far below every
  // statistical tolerance used here and keeps the stream prefix-stable.
  int next_symbol(int alphabet) {
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(next()) * static_cast<unsigned __int128>(alphabet);
    return static_cast<int>(wide >> 64) + 1;
  }
};

inline uint64_t derive_stream(uint64_t seed, uint64_t stream) {
  SplitMix64 mix(seed ^ (0xA0761D6478BD642Full + stream * 0xE7037ED1A0B428DBull));
  return mix.next();
}

}  // namespace recur
