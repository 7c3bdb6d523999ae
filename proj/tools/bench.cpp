#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pcmc/channel.hpp"
#include "pcmc/link.hpp"
#include "pcmc/montecarlo.hpp"

namespace {

namespace chan = pcmc::channel;
namespace mc = pcmc::montecarlo;
namespace link = pcmc::link;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool same_hits(const std::vector<mc::HitRecord>& a,
               const std::vector<mc::HitRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].molecule_id != b[i].molecule_id || a[i].hit_time != b[i].hit_time ||
        a[i].hit_angle != b[i].hit_angle)
      return false;
  return true;
}

bool same_trace(const link::CountTrace& a, const link::CountTrace& b) {
  return a.bits == b.bits && a.counts == b.counts;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t n_molecules =
      argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  const std::uint64_t n_bits =
      argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 500000;

#ifdef _OPENMP
  std::printf("openmp: %d threads\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled\n");
#endif

  const chan::ChannelGeometry g{10.0, 5.0, 80.0};

  mc::SimConfig sim{g, 1e-4, 2.0, n_molecules, 7};
  auto t0 = std::chrono::steady_clock::now();
  const auto serial_hits = mc::simulate_serial(sim);
  const double t_walk_serial = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto parallel_hits = mc::simulate(sim);
  const double t_walk_parallel = seconds_since(t0);
  std::printf("simulate  %8llu molecules  serial %.3fs  parallel %.3fs  x%.2f  %s\n",
              static_cast<unsigned long long>(n_molecules), t_walk_serial,
              t_walk_parallel, t_walk_serial / t_walk_parallel,
              same_hits(serial_hits, parallel_hits) ? "identical" : "MISMATCH");

  link::LinkConfig lc{chan::taps(g, 2.0, 0.15, 32), 300, 0, 60, n_bits, 7,
                      0.5, true};
  t0 = std::chrono::steady_clock::now();
  const auto serial_trace = link::simulate_counts_serial(lc);
  const double t_link_serial = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const auto parallel_trace = link::simulate_counts(lc);
  const double t_link_parallel = seconds_since(t0);
  std::printf("counts    %8llu bits       serial %.3fs  parallel %.3fs  x%.2f  %s\n",
              static_cast<unsigned long long>(n_bits), t_link_serial,
              t_link_parallel, t_link_serial / t_link_parallel,
              same_trace(serial_trace, parallel_trace) ? "identical" : "MISMATCH");

  const bool ok = same_hits(serial_hits, parallel_hits) &&
                  same_trace(serial_trace, parallel_trace);
  return ok ? 0 : 1;
}
