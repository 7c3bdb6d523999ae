#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pcmc/channel.hpp"

namespace pcmc::montecarlo {

struct Vec3 {
  double x, y, z;
};

struct SimConfig {
  channel::ChannelGeometry geometry;
  double dt;             // step size [s]
  double t_max;          // simulation horizon [s]
  std::uint64_t n_molecules;
  std::uint64_t seed;

  void validate() const;
};

/// One absorbed molecule: first-hit time and polar angle of the hit point
/// measured from the receiver-center -> Tx axis.
struct HitRecord {
  std::uint64_t molecule_id;
  double hit_time;
  double hit_angle;
};

/// Fraction of molecules with hit_angle <= alpha and hit_time <= t,
/// tabulated on an (alpha, time) grid. Nondecreasing along both axes.
struct EmpiricalCdf {
  std::vector<double> alphas;
  std::vector<double> times;
  std::vector<double> values;  // row-major, alphas x times

  double at(std::size_t ai, std::size_t ti) const {
    return values[ai * times.size() + ti];
  }
};

/// First intersection of the segment p_prev -> p_next with the sphere of
/// radius rr centered at the origin. Returns the surface point and the
/// fractional step lambda in [0, 1]. Throws if the segment misses.
std::pair<Vec3, double> crossing_point(const Vec3& p_prev, const Vec3& p_next,
                                       double rr);

/// Brownian walk of a single molecule released at (r0, 0, 0); first-contact
/// absorption with sub-step segment-sphere localization. The RNG substream
/// is keyed by (seed, molecule id).
std::optional<HitRecord> walk_molecule(const SimConfig& cfg, std::uint64_t id);

/// All molecules, OpenMP-parallel. Output is ordered by molecule id and is
/// a pure function of the config, independent of thread count.
std::vector<HitRecord> simulate(const SimConfig& cfg);

/// Serial reference implementation of simulate (identical contract).
std::vector<HitRecord> simulate_serial(const SimConfig& cfg);

EmpiricalCdf empirical_cdf(const std::vector<HitRecord>& records,
                           std::uint64_t n_molecules,
                           const std::vector<double>& alphas,
                           const std::vector<double>& times);

}  // namespace pcmc::montecarlo
