#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pcmc/channel.hpp"
#include "pcmc/rng.hpp"

namespace pcmc::link {

/// Binary CSK link over a tap-based ISI channel with binomial reception.
struct LinkConfig {
  channel::TapVector taps;
  std::uint64_t n1;         // molecules emitted for bit-1
  std::uint64_t n0 = 0;     // molecules emitted for bit-0
  std::uint64_t threshold;  // detection threshold tau
  std::uint64_t n_bits;
  std::uint64_t seed;
  double prior1 = 0.5;
  /// Model ISI beyond the explicit taps as a Poisson arrival stream with
  /// the steady-state mean prior1 * n1 * tail. Without it, truncating the
  /// heavy 1/sqrt(t) tail at L taps visibly shifts the BER.
  bool model_far_tail = true;

  void validate() const;
};

struct BerResult {
  double ber;
  std::uint64_t errors;
  std::uint64_t bits;
  double confidence_halfwidth_95;
};

/// Binomial(n, p) quantile via inverse-CDF. Shared uniforms keyed per
/// symbol give common-random-number coupling across tap vectors, which is
/// what makes BER differences between nearby alpha values resolvable.
std::uint64_t binomial_icdf(std::uint64_t n, double p, double u);

std::uint64_t poisson_icdf(double lambda, double u);

/// Molecules counted during symbol k: one binomial thinning per emission
/// inside the explicit channel memory. bits[k] is the current symbol.
std::uint64_t received_count(std::span<const std::uint8_t> bits, std::size_t k,
                             const LinkConfig& cfg, rng::SplitMix64& gen);

/// Threshold detector; boundary convention is count >= threshold -> 1.
inline std::uint8_t detect(std::uint64_t count, std::uint64_t threshold) {
  return count >= threshold ? 1 : 0;
}

/// Per-symbol counts for a full random bit sequence (OpenMP-parallel,
/// deterministic per seed independent of thread count).
struct CountTrace {
  std::vector<std::uint8_t> bits;
  std::vector<std::uint64_t> counts;
};

CountTrace simulate_counts(const LinkConfig& cfg);

/// Serial reference for simulate_counts (identical contract).
CountTrace simulate_counts_serial(const LinkConfig& cfg);

BerResult ber_from_trace(const CountTrace& trace, std::uint64_t threshold);

BerResult ber_monte_carlo(const LinkConfig& cfg);

/// Integer threshold sweep over [0, n1] minimizing the Monte Carlo BER on
/// a shared count trace; ties break toward the smaller threshold.
std::uint64_t optimize_threshold(const LinkConfig& cfg);

/// Threshold sweep and BER on a single trace (what the sweeps use).
struct OptimizedBer {
  std::uint64_t threshold;
  BerResult result;
};

OptimizedBer ber_with_optimized_threshold(const LinkConfig& cfg);

}  // namespace pcmc::link
