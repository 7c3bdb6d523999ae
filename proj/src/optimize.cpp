#include "pcmc/optimize.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcmc/link.hpp"
#include "pcmc/specfun.hpp"

namespace pcmc::optimize {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

double alpha_from_x(const channel::ChannelGeometry& g, double x,
                    AlphaStar* out) {
  const double arg = (g.r0 * g.r0 + g.rr * g.rr - x) / (2.0 * g.r0 * g.rr);
  if (arg > 1.0) {
    *out = {0.0, AlphaStarOutcome::saturated_zero};
  } else if (arg < -1.0) {
    *out = {kPi, AlphaStarOutcome::saturated_full};
  } else {
    *out = {std::acos(arg), AlphaStarOutcome::interior};
  }
  return out->alpha;
}

// Right-hand side of the stationarity condition: the counting-mass ratio
// rr (r0^2 - rr^2) U(ts) / (4 r0^3 Fhit(ts)). Also equals -M' / Y' for the
// exact-series constants.
double stationarity_ratio(const channel::ChannelGeometry& g, double ts) {
  const double u = channel::u_of_t(g, ts);
  const double f1 = channel::fhit(g, ts);
  return g.rr * (g.r0 * g.r0 - g.rr * g.rr) * u / (4.0 * g.r0 * g.r0 * g.r0 * f1);
}

}  // namespace

double sid(const channel::ChannelGeometry& g, double alpha, double ts) {
  return 2.0 * channel::f_alpha_t(g, alpha, ts) - channel::f_alpha_inf(g, alpha);
}

SidCurve sid_curve(const channel::ChannelGeometry& g, double ts, double step) {
  if (!(step > 0.0)) throw std::domain_error("sid_curve: step must be positive");
  SidCurve curve{{}, {}, 0.0};
  double best = -1e300;
  for (double a = 0.0; a <= kPi + 1e-12; a += step) {
    const double al = std::min(a, kPi);
    const double v = sid(g, al, ts);
    curve.alphas.push_back(al);
    curve.sid_values.push_back(v);
    if (v > best) {
      best = v;
      curve.argmax_alpha = al;
    }
  }
  return curve;
}

double sid_grid_argmax(const channel::ChannelGeometry& g, double ts,
                       double step) {
  return sid_curve(g, ts, step).argmax_alpha;
}

AppendixConstants AppendixConstants::make(const channel::ChannelGeometry& g,
                                          double ts) {
  if (!(ts > 0.0))
    throw std::domain_error("AppendixConstants: ts must be positive");
  return AppendixConstants{
      g.D * ts,
      -2.0 * g.rr * channel::fhit(g, ts) / channel::u_of_t(g, ts),
      g.r0 * g.r0 / 2.0};
}

double AppendixConstants::x(const channel::ChannelGeometry& g,
                            double alpha) const {
  const double s = channel::r0_star(g, alpha);
  return s * s;
}

AlphaStar alpha_star_closed_form(const channel::ChannelGeometry& g, double ts) {
  g.validate();
  const AppendixConstants c = AppendixConstants::make(g, ts);
  const double ratio = stationarity_ratio(g, ts);
  AlphaStar out{};
  if (ratio >= 1.0) {
    out = {0.0, AlphaStarOutcome::saturated_zero};
    return out;
  }
  const double root = 2.0 * std::sqrt(c.a) * specfun::erfc_inv(ratio);
  alpha_from_x(g, root * root, &out);
  return out;
}

AlphaStar alpha_star_series(const channel::ChannelGeometry& g, double ts) {
  g.validate();
  const AppendixConstants c = AppendixConstants::make(g, ts);
  const double ratio = stationarity_ratio(g, ts);
  // erfc_inv(z) ~ sqrt(pi) (1 - z) / 2 near z = 1: sqrt(x) = sqrt(pi a)(1 - ratio).
  const double root = std::sqrt(kPi * c.a) * (1.0 - ratio);
  AlphaStar out{};
  alpha_from_x(g, root * root, &out);
  return out;
}

SweepResult sweep_ber_vs_alpha(const channel::ChannelGeometry& g, double ts,
                               const std::vector<double>& alphas,
                               const LinkParams& params) {
  SweepResult result;
  result.rows.reserve(alphas.size());
  for (double alpha : alphas) {
    const std::size_t mem =
        channel::memory_length(g, alpha, ts, 1e-4, params.max_taps);
    link::LinkConfig cfg{channel::taps(g, alpha, ts, mem),
                         params.n1,
                         params.n0,
                         0,
                         params.n_bits,
                         params.seed,
                         params.prior1,
                         true};
    const link::OptimizedBer ob = link::ber_with_optimized_threshold(cfg);
    result.rows.push_back(SweepRow{alpha, params.n1, ob.threshold,
                                   ob.result.ber,
                                   ob.result.confidence_halfwidth_95});
  }
  return result;
}

double fitted_argmin(const std::vector<double>& xs,
                     const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.empty())
    throw std::domain_error("fitted_argmin: bad grid");
  std::size_t i = 0;
  for (std::size_t k = 1; k < ys.size(); ++k)
    if (ys[k] < ys[i]) i = k;
  if (i == 0 || i + 1 == ys.size()) return xs[i];
  const double x0 = xs[i - 1], x1 = xs[i], x2 = xs[i + 1];
  const double y0 = ys[i - 1], y1 = ys[i], y2 = ys[i + 1];
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  if (!(a > 0.0)) return x1;
  const double b =
      (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  const double xm = -b / (2.0 * a);
  return (xm >= x0 && xm <= x2) ? xm : x1;
}

}  // namespace pcmc::optimize
