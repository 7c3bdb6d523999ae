#include <cmath>
#include <numbers>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <doctest.h>

#include "pcmc/channel.hpp"
#include "pcmc/link.hpp"
#include "pcmc/rng.hpp"

namespace link = pcmc::link;
namespace chan = pcmc::channel;

namespace {
const chan::ChannelGeometry kRef{10.0, 5.0, 80.0};

chan::TapVector make_taps(std::vector<double> p) {
  return chan::TapVector{std::move(p), 0.15, std::numbers::pi, kRef};
}
}  // namespace

TEST_CASE("binomial_icdf obeys the boundaries and reproduces moments") {
  CHECK(link::binomial_icdf(0, 0.5, 0.7) == 0);
  CHECK(link::binomial_icdf(10, 0.0, 0.7) == 0);
  CHECK(link::binomial_icdf(10, 1.0, 0.7) == 10);
  CHECK(link::binomial_icdf(10, 0.5, 1e-12) == 0);
  CHECK(link::binomial_icdf(10, 0.5, 1.0 - 1e-13) == 10);

  pcmc::rng::SplitMix64 gen = pcmc::rng::SplitMix64::stream(3, 0);
  const int n_draws = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    const auto k = static_cast<double>(link::binomial_icdf(300, 0.1, gen.uniform()));
    sum += k;
    sum2 += k * k;
  }
  const double mean = sum / n_draws;
  const double var = sum2 / n_draws - mean * mean;
  CHECK(mean == doctest::Approx(30.0).epsilon(0.01));
  CHECK(var == doctest::Approx(27.0).epsilon(0.05));
}

TEST_CASE("binomial_icdf is monotone in u (common random number coupling)") {
  std::uint64_t prev = 0;
  for (double u = 0.005; u < 1.0; u += 0.01) {
    const std::uint64_t k = link::binomial_icdf(200, 0.3, u);
    CHECK(k >= prev);
    prev = k;
  }
}

TEST_CASE("poisson_icdf moments and boundaries") {
  CHECK(link::poisson_icdf(0.0, 0.99) == 0);
  pcmc::rng::SplitMix64 gen = pcmc::rng::SplitMix64::stream(4, 0);
  const int n_draws = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n_draws; ++i) {
    const auto k = static_cast<double>(link::poisson_icdf(7.5, gen.uniform()));
    sum += k;
    sum2 += k * k;
  }
  const double mean = sum / n_draws;
  const double var = sum2 / n_draws - mean * mean;
  CHECK(mean == doctest::Approx(7.5).epsilon(0.01));
  CHECK(var == doctest::Approx(7.5).epsilon(0.05));
}

TEST_CASE("detect boundary convention is count >= threshold") {
  CHECK(link::detect(5, 5) == 1);
  CHECK(link::detect(4, 5) == 0);
  CHECK(link::detect(0, 0) == 1);
}

TEST_CASE("received_count draws one uniform per tap in scope") {
  const link::LinkConfig cfg{make_taps({0.3, 0.1, 0.05}), 100, 0, 1,
                             4,          5, 0.5,          false};
  const std::vector<std::uint8_t> bits{1, 0, 1, 1};
  pcmc::rng::SplitMix64 a = pcmc::rng::SplitMix64::stream(5, 1);
  pcmc::rng::SplitMix64 b = pcmc::rng::SplitMix64::stream(5, 1);
  (void)link::received_count(bits, 0, cfg, a);  // k=0: one tap in scope
  (void)b.uniform();
  CHECK(a.state == b.state);
  pcmc::rng::SplitMix64 c = pcmc::rng::SplitMix64::stream(5, 1);
  (void)link::received_count(bits, 3, cfg, c);  // k=3: all three taps
  pcmc::rng::SplitMix64 d = pcmc::rng::SplitMix64::stream(5, 1);
  for (int i = 0; i < 3; ++i) (void)d.uniform();
  CHECK(c.state == d.state);
}

TEST_CASE("received_count mean matches n1 * sum of active taps") {
  const link::LinkConfig cfg{make_taps({0.2, 0.1}), 200, 0, 1, 2,
                             6,          0.5,        false};
  const std::vector<std::uint8_t> bits{1, 1};
  double sum = 0.0;
  const int n_draws = 100000;
  for (int i = 0; i < n_draws; ++i) {
    pcmc::rng::SplitMix64 gen = pcmc::rng::SplitMix64::stream(100, i);
    sum += static_cast<double>(link::received_count(bits, 1, cfg, gen));
  }
  CHECK(sum / n_draws == doctest::Approx(200.0 * 0.3).epsilon(0.01));
}

TEST_CASE("simulate_counts equals serial and is thread-count independent") {
  const link::LinkConfig cfg{make_taps({0.25, 0.08, 0.03}), 150, 0, 20,
                             20000,      7,  0.5,           true};
  const auto serial = link::simulate_counts_serial(cfg);
  const auto parallel = link::simulate_counts(cfg);
  CHECK(serial.bits == parallel.bits);
  CHECK(serial.counts == parallel.counts);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = link::simulate_counts(cfg);
  omp_set_num_threads(saved);
  CHECK(one.counts == parallel.counts);
#endif
}

TEST_CASE("bit prior is honored") {
  const link::LinkConfig cfg{make_taps({0.2}), 100, 0, 10, 50000, 8, 0.2, false};
  const auto trace = link::simulate_counts(cfg);
  double ones = 0.0;
  for (auto b : trace.bits) ones += b;
  CHECK(ones / static_cast<double>(trace.bits.size()) ==
        doctest::Approx(0.2).epsilon(0.05));
}

TEST_CASE("degenerate channel: zero taps give BER = prior1 at tau >= 1") {
  const link::LinkConfig cfg{make_taps({0.0, 0.0}), 100, 0, 1, 20000,
                             9,          0.5,        false};
  const auto r = link::ber_monte_carlo(cfg);
  // Every count is 0, detected 0; errors are exactly the transmitted ones.
  CHECK(r.ber == doctest::Approx(0.5).epsilon(0.05));
  CHECK(r.errors <= r.bits);
}

TEST_CASE("strong channel: optimized threshold reaches near-zero BER") {
  const link::LinkConfig cfg{make_taps({0.4}), 300, 0, 0, 20000, 10, 0.5, false};
  const auto ob = link::ber_with_optimized_threshold(cfg);
  CHECK(ob.threshold > 0);
  CHECK(ob.threshold <= 300);
  CHECK(ob.result.ber < 1e-3);
  CHECK(ob.result.confidence_halfwidth_95 > 0.0);
}

TEST_CASE("optimize_threshold tie-breaks toward the smaller threshold") {
  // Counts are either 0 (bit 0) or >= 60 with overwhelming probability, so
  // every tau in [1, 60] has the same error count; the sweep must pick 1.
  const link::LinkConfig cfg{make_taps({0.9}), 100, 0, 0, 5000, 11, 0.5, false};
  const auto tau = link::optimize_threshold(cfg);
  CHECK(tau == 1);
}

TEST_CASE("ber_from_trace counts errors against the stored bits") {
  link::CountTrace trace;
  trace.bits = {1, 0, 1, 0};
  trace.counts = {5, 1, 0, 3};
  const auto r = link::ber_from_trace(trace, 3);
  CHECK(r.errors == 2);  // count 0 for a 1-bit, count 3 for a 0-bit
  CHECK(r.ber == doctest::Approx(0.5));
  CHECK(r.bits == 4);
}

TEST_CASE("far-tail model adds interference only beyond the memory") {
  const chan::TapVector tv = chan::taps(kRef, std::numbers::pi, 0.15, 8);
  const link::LinkConfig with{tv, 300, 0, 40, 2000, 12, 0.5, true};
  const link::LinkConfig without{tv, 300, 0, 40, 2000, 12, 0.5, false};
  const auto a = link::simulate_counts(with);
  const auto b = link::simulate_counts(without);
  for (std::size_t k = 0; k < tv.taps.size(); ++k)
    CHECK(a.counts[k] == b.counts[k]);
  double extra = 0.0;
  for (std::size_t k = tv.taps.size(); k < a.counts.size(); ++k)
    extra += static_cast<double>(a.counts[k]) - static_cast<double>(b.counts[k]);
  const double expected =
      0.5 * 300.0 * tv.tail() *
      static_cast<double>(a.counts.size() - tv.taps.size());
  CHECK(extra == doctest::Approx(expected).epsilon(0.1));
}

TEST_CASE("config validation") {
  link::LinkConfig bad{make_taps({0.2}), 100, 100, 1, 10, 1, 0.5, false};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  link::LinkConfig bad2{make_taps({}), 100, 0, 1, 10, 1, 0.5, false};
  CHECK_THROWS_AS(bad2.validate(), std::domain_error);
  link::LinkConfig bad3{make_taps({1.2}), 100, 0, 1, 10, 1, 0.5, false};
  CHECK_THROWS_AS(bad3.validate(), std::domain_error);
  link::LinkConfig bad4{make_taps({0.2}), 100, 0, 1, 0, 1, 0.5, false};
  CHECK_THROWS_AS(bad4.validate(), std::domain_error);
  link::LinkConfig bad5{make_taps({0.2}), 100, 0, 1, 10, 1, 1.5, false};
  CHECK_THROWS_AS(bad5.validate(), std::domain_error);
}
