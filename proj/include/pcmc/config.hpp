#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcmc/channel.hpp"

namespace pcmc::config {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Full experiment description. Defaults mirror the most-used parameter
/// set (r0 = 10 um, rr = 5 um, D = 80 um^2/s, t_s = 150 ms) so the
/// zero-config path reproduces the reference setup.
struct ExperimentConfig {
  // [geometry]
  double r0 = 10.0;
  double rr = 5.0;
  double D = 80.0;
  std::vector<double> d_grid = {3, 4, 5, 6, 7, 8, 9, 10};  // peak sweeps

  // [region]  (degrees; single value or comma list; a:b:step expands)
  std::vector<double> alphas_deg = {60.0, 45.0, 30.0};

  // [timing]
  double t_s = 0.15;
  double tap_tol = 1e-4;
  std::uint64_t max_taps = 256;
  std::uint64_t taps_len = 0;  // 0 = derive from tap_tol/max_taps
  std::vector<double> times = {};  // cdf grid; empty = 20 points up to 10 s

  // [simulation]
  double dt = 1e-4;
  double t_max = 10.0;
  std::uint64_t n_molecules = 100000;
  std::uint64_t seed = 1;

  // [link]
  std::uint64_t n1 = 300;
  std::uint64_t n0 = 0;
  long long threshold = -1;  // -1 = optimize per configuration
  std::uint64_t n_bits = 1000000;
  double prior1 = 0.5;
  std::vector<double> m_grid = {};  // ber sweep over molecules-per-bit-1
  std::string sweep = "alpha";      // "alpha" | "molecules"

  // [output]
  std::string format = "csv";  // "csv" | "json"
  std::string path = "-";      // "-" = stdout

  channel::ChannelGeometry geometry() const { return {r0, rr, D}; }
  std::vector<double> alphas_rad() const;
  std::vector<double> cdf_times() const;

  void validate() const;
  std::string serialize() const;
};

ExperimentConfig parse(const std::string& text);
ExperimentConfig load_file(const std::string& path);

}  // namespace pcmc::config
