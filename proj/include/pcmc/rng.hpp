#pragma once

#include <cstdint>

namespace pcmc::rng {

/// Counter-keyed splitmix64 stream. Streams are keyed by (seed, index) so
/// any work item gets the same substream regardless of which thread runs
/// it; this is what makes parallel runs byte-identical to serial ones.
struct SplitMix64 {
  std::uint64_t state;

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64{mix(mix(seed) ^ mix(index * 0xd1342543de82ef95ull + 1))};
  }

  result_type operator()() {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }
};

}  // namespace pcmc::rng
