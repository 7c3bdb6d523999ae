#pragma once

#include <cstdint>
#include <vector>

#include "pcmc/channel.hpp"

namespace pcmc::optimize {

/// Signal-to-interference difference, SID(alpha) = 2 F(alpha, ts) - F(alpha, inf):
/// first tap minus the sum of all later taps.
double sid(const channel::ChannelGeometry& g, double alpha, double ts);

struct SidCurve {
  std::vector<double> alphas;
  std::vector<double> sid_values;
  double argmax_alpha;
};

SidCurve sid_curve(const channel::ChannelGeometry& g, double ts, double step);

/// Grid argmax of SID over {0, step, ..., pi}; ties toward the smaller alpha.
double sid_grid_argmax(const channel::ChannelGeometry& g, double ts,
                       double step);

/// Constants of the series form of the SID optimum.
/// a = D ts, Y = -2 rr Fhit(ts) / U(ts), M = r0^2 / 2,
/// x(alpha) = r0^2 - 2 r0 rr cos(alpha) + rr^2.
struct AppendixConstants {
  double a;
  double y;
  double m_const;

  static AppendixConstants make(const channel::ChannelGeometry& g, double ts);
  double x(const channel::ChannelGeometry& g, double alpha) const;
};

enum class AlphaStarOutcome {
  interior,        // stationary point inside (0, pi)
  saturated_full,  // optimum saturates at alpha = pi (large ts)
  saturated_zero,  // no mass advantage anywhere, optimum at alpha = 0
};

struct AlphaStar {
  double alpha;
  AlphaStarOutcome outcome;
};

/// Closed-form SID maximizer. Differentiating 2F(alpha, ts) - F(alpha, inf)
/// in x = r0*(alpha)^2 collapses to the stationarity condition
///   erfc( sqrt(x) / (2 sqrt(D ts)) ) = rr (r0^2 - rr^2) U(ts) / (4 r0^3 Fhit(ts)),
/// inverted exactly with erfc_inv. When the root leaves
/// [(r0-rr)^2, (r0+rr)^2] the boundary outcome is reported, not clamped.
AlphaStar alpha_star_closed_form(const channel::ChannelGeometry& g, double ts);

/// First-order series version of the same inversion (erfc linearized around
/// 0, the small-x expansion). Kept for the documented gap report; the exact
/// form above is the production path.
AlphaStar alpha_star_series(const channel::ChannelGeometry& g, double ts);

/// One point of a BER-vs-alpha (or vs molecule count) sweep.
struct SweepRow {
  double alpha;
  std::uint64_t n1;
  std::uint64_t threshold;
  double ber;
  double ci_halfwidth;
};

struct SweepResult {
  std::vector<SweepRow> rows;
};

struct LinkParams {
  std::uint64_t n1;
  std::uint64_t n0 = 0;
  std::uint64_t n_bits;
  std::uint64_t seed;
  double prior1 = 0.5;
  std::size_t max_taps = 256;
};

/// For each alpha: build taps, optimize the threshold, run the BER
/// Monte Carlo. Seeds are shared across alphas (common random numbers),
/// so differences between nearby grid points are not noise-dominated.
SweepResult sweep_ber_vs_alpha(const channel::ChannelGeometry& g, double ts,
                               const std::vector<double>& alphas,
                               const LinkParams& params);

/// Sub-grid minimum estimate: parabola through the grid minimum and its
/// neighbors. Falls back to the grid argmin at the sweep edges.
double fitted_argmin(const std::vector<double>& xs,
                     const std::vector<double>& ys);

}  // namespace pcmc::optimize
