#pragma once

#include <cstdint>

namespace pointproc {

// Child-seed derivation. mix64(s, i) is the (i+1)-th output of a splitmix64
// generator seeded with s, so derived streams coincide with the usual
// splittable-RNG construction (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * UINT64_C(0x9E3779B97F4A7C15);
  z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
  z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += UINT64_C(0x9E3779B97F4A7C15));
    z = (z ^ (z >> 30)) * UINT64_C(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)) * UINT64_C(0x94D049BB133111EB);
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 random bits.
  double next_double() { return (next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

// A reproducible position in the seed tree: a root seed plus a stream index.
// Children are derived purely, so a draw is a function of (seed, path) and
// nothing else.
struct SeedState {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  std::uint64_t effective() const { return mix64(seed, stream); }
  SeedState child(std::uint64_t index) const { return {effective(), index}; }
  SplitMix64 rng() const { return SplitMix64(effective()); }
};

}  // namespace pointproc
