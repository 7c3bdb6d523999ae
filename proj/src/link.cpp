#include "pcmc/link.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pcmc::link {

namespace {

// log pmf start point for a center-out inverse-CDF scan. Mass below the
// start is < 1e-15 of the distribution; the scan proceeds upward only.
std::uint64_t scan_start(double mean, double sd) {
  const double lo = mean - 9.0 * sd - 5.0;
  return lo > 0.0 ? static_cast<std::uint64_t>(lo) : 0;
}

}  // namespace

void LinkConfig::validate() const {
  taps.geometry.validate();
  if (taps.taps.empty()) throw std::domain_error("LinkConfig: empty tap vector");
  for (double p : taps.taps)
    if (!(p >= 0.0 && p <= 1.0))
      throw std::domain_error("LinkConfig: tap outside [0, 1]");
  if (!(n1 > n0)) throw std::domain_error("LinkConfig: need n1 > n0");
  if (n_bits < 1) throw std::domain_error("LinkConfig: n_bits must be >= 1");
  if (!(prior1 > 0.0 && prior1 < 1.0))
    throw std::domain_error("LinkConfig: prior1 must lie in (0, 1)");
}

std::uint64_t binomial_icdf(std::uint64_t n, double p, double u) {
  if (n == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return n;
  const double nd = static_cast<double>(n);
  const double mean = nd * p;
  const double sd = std::sqrt(mean * (1.0 - p));
  std::uint64_t k = scan_start(mean, sd);
  double log_pmf =
      std::lgamma(nd + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
      std::lgamma(nd - static_cast<double>(k) + 1.0) +
      static_cast<double>(k) * std::log(p) +
      (nd - static_cast<double>(k)) * std::log1p(-p);
  double pmf = std::exp(log_pmf);
  double cdf = pmf;
  const double odds = p / (1.0 - p);
  while (cdf < u && k < n) {
    pmf *= (nd - static_cast<double>(k)) / (static_cast<double>(k) + 1.0) * odds;
    cdf += pmf;
    ++k;
    if (pmf < 1e-320 && cdf < u) break;  // deep right tail, stop scanning
  }
  return k;
}

std::uint64_t poisson_icdf(double lambda, double u) {
  if (!(lambda > 0.0)) return 0;
  std::uint64_t k = scan_start(lambda, std::sqrt(lambda));
  double pmf = std::exp(static_cast<double>(k) * std::log(lambda) - lambda -
                        std::lgamma(static_cast<double>(k) + 1.0));
  double cdf = pmf;
  while (cdf < u) {
    pmf *= lambda / (static_cast<double>(k) + 1.0);
    cdf += pmf;
    ++k;
    if (pmf < 1e-320 && cdf < u) break;
  }
  return k;
}

std::uint64_t received_count(std::span<const std::uint8_t> bits, std::size_t k,
                             const LinkConfig& cfg, rng::SplitMix64& gen) {
  const auto& taps = cfg.taps.taps;
  const std::size_t span_len = std::min(k + 1, taps.size());
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < span_len; ++j) {
    const double u = gen.uniform();  // one draw per tap, fixed order
    const std::uint64_t amount = bits[k - j] ? cfg.n1 : cfg.n0;
    if (amount > 0 && taps[j] > 0.0)
      total += binomial_icdf(amount, taps[j], u);
  }
  return total;
}

namespace {

CountTrace run_counts(const LinkConfig& cfg, bool parallel) {
  cfg.validate();
  const std::size_t n = cfg.n_bits;
  CountTrace trace;
  trace.bits.resize(n);
  trace.counts.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    rng::SplitMix64 gen = rng::SplitMix64::stream(cfg.seed, 2 * k);
    trace.bits[k] = gen.uniform() < cfg.prior1 ? 1 : 0;
  }
  const double tail = cfg.model_far_tail ? cfg.taps.tail() : 0.0;
  const double tail_mean =
      tail * (cfg.prior1 * static_cast<double>(cfg.n1) +
              (1.0 - cfg.prior1) * static_cast<double>(cfg.n0));
  const std::size_t memory = cfg.taps.taps.size();
  const auto body = [&](std::size_t k) {
    rng::SplitMix64 gen = rng::SplitMix64::stream(cfg.seed, 2 * k + 1);
    std::uint64_t c = received_count(trace.bits, k, cfg, gen);
    // Steady-state Poisson lump for emissions older than the explicit
    // memory; only active once the sequence is long enough to have them.
    if (tail_mean > 0.0 && k >= memory)
      c += poisson_icdf(tail_mean, gen.uniform());
    trace.counts[k] = c;
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < static_cast<std::int64_t>(n); ++k)
      body(static_cast<std::size_t>(k));
  } else {
    for (std::size_t k = 0; k < n; ++k) body(k);
  }
  return trace;
}

}  // namespace

CountTrace simulate_counts(const LinkConfig& cfg) { return run_counts(cfg, true); }

CountTrace simulate_counts_serial(const LinkConfig& cfg) {
  return run_counts(cfg, false);
}

BerResult ber_from_trace(const CountTrace& trace, std::uint64_t threshold) {
  std::uint64_t errors = 0;
  for (std::size_t k = 0; k < trace.bits.size(); ++k)
    if (detect(trace.counts[k], threshold) != trace.bits[k]) ++errors;
  const auto n = static_cast<double>(trace.bits.size());
  const double ber = static_cast<double>(errors) / n;
  const double hw = 1.96 * std::sqrt(std::max(ber * (1.0 - ber), 1.0 / n) / n);
  return BerResult{ber, errors, trace.bits.size(), hw};
}

BerResult ber_monte_carlo(const LinkConfig& cfg) {
  return ber_from_trace(simulate_counts(cfg), cfg.threshold);
}

namespace {

std::uint64_t best_threshold(const CountTrace& trace, std::uint64_t n1) {
  // errors(tau) = #{bit-1 counts < tau} + #{bit-0 counts >= tau} via
  // histograms clamped at n1 (counts beyond n1 behave identically for
  // every tau in the sweep range).
  std::vector<std::uint64_t> h1(n1 + 1, 0), h0(n1 + 1, 0);
  std::uint64_t total0 = 0;
  for (std::size_t k = 0; k < trace.bits.size(); ++k) {
    const std::uint64_t c = std::min(trace.counts[k], n1);
    if (trace.bits[k])
      ++h1[c];
    else
      ++h0[c], ++total0;
  }
  std::uint64_t below1 = 0, below0 = 0;
  std::uint64_t best_tau = 0, best_err = total0;  // tau = 0: all detected 1
  for (std::uint64_t tau = 1; tau <= n1; ++tau) {
    below1 += h1[tau - 1];
    below0 += h0[tau - 1];
    const std::uint64_t err = below1 + (total0 - below0);
    if (err < best_err) {
      best_err = err;
      best_tau = tau;
    }
  }
  return best_tau;
}

}  // namespace

std::uint64_t optimize_threshold(const LinkConfig& cfg) {
  return best_threshold(simulate_counts(cfg), cfg.n1);
}

OptimizedBer ber_with_optimized_threshold(const LinkConfig& cfg) {
  const CountTrace trace = simulate_counts(cfg);
  const std::uint64_t tau = best_threshold(trace, cfg.n1);
  return OptimizedBer{tau, ber_from_trace(trace, tau)};
}

}  // namespace pcmc::link
