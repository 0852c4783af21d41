#pragma once

#include <cstdint>

// Counter-based deterministic random numbers: every draw is a pure function
// of (seed, counter), so a sample stream can be evaluated in any order and
// partitioned across workers without changing a single bit of the result.

namespace latq {

// SplitMix64 output function evaluated at a keyed counter.
inline std::uint64_t mix_u64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(mix_u64(seed, counter) >> 11) * 0x1.0p-53;
}

// Small sequential generator for tests and input synthesis; same mixing,
// stateful counter.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return mix_u64(seed_, counter_++); }
  double next_unit() { return uniform01(seed_, counter_++); }
  // Uniform in [lo, hi).
  double next_in(double lo, double hi) { return lo + (hi - lo) * next_unit(); }
  std::int64_t next_int(std::int64_t lo, std::int64_t hi) {  // inclusive bounds
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace latq
