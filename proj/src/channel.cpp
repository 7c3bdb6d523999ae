#include "pcmc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcmc/golden.hpp"
#include "pcmc/quadrature.hpp"
#include "pcmc/specfun.hpp"

namespace pcmc::channel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrtPi = 1.7724538509055160273;

// Angular kernel (1 - 2 g cos(theta) + g^2)^{3/2} = (r0*/r0)^3.
double kernel32(const ChannelGeometry& g, double theta) {
  const double gm = g.gamma();
  const double q = 1.0 - 2.0 * gm * std::cos(theta) + gm * gm;
  return q * std::sqrt(q);
}

// Antiderivative of erfc(s / sqrt(4Dt)) / s^2 in s:
//   -erfc(c s)/s - (c/sqrt(pi)) Ei(-c^2 s^2),  c = 1/(2 sqrt(Dt)).
// The theta integrals of the reweighted kernel reduce to this via
// the substitution s = r0*(theta); U and the closed-form F are its
// differences at s = r0 - rr, r0*(alpha), r0 + rr.
double erfc_antideriv(double s, double c) {
  return -specfun::erfc(c * s) / s -
         c / kSqrtPi * specfun::expint_ei(-c * c * s * s);
}

// As t -> infinity the antiderivative degenerates to -1/s.
double kernel_integral_inf(const ChannelGeometry& g, double s_lo, double s_hi) {
  return g.r0 * g.r0 / g.rr * (1.0 / s_lo - 1.0 / s_hi);
}

double kernel_integral(const ChannelGeometry& g, double s_lo, double s_hi,
                       double t) {
  const double c = 1.0 / (2.0 * std::sqrt(g.D * t));
  return g.r0 * g.r0 / g.rr *
         (erfc_antideriv(s_hi, c) - erfc_antideriv(s_lo, c));
}

double kernel_quadrature(const ChannelGeometry& g, double lo, double hi,
                         double t) {
  const double inv_sqrt4dt = 1.0 / std::sqrt(4.0 * g.D * t);
  return quad::integrate(
      [&](double th) {
        return specfun::erfc(r0_star(g, th) * inv_sqrt4dt) * std::sin(th) /
               kernel32(g, th);
      },
      lo, hi, 1e-10);
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi))
    throw std::domain_error("alpha must lie in [0, pi]");
}

}  // namespace

void ChannelGeometry::validate() const {
  if (!(r0 > rr) || !(rr > 0.0) || !(D > 0.0))
    throw std::domain_error("ChannelGeometry: need r0 > rr > 0 and D > 0");
}

void CountingRegion::validate() const { check_alpha(alpha); }

double TapVector::sum() const {
  double s = 0.0;
  for (double p : taps) s += p;
  return s;
}

double TapVector::tail() const {
  return f_alpha_inf(geometry, alpha) -
         f_alpha_t(geometry, alpha, taps.size() * symbol_duration,
                   FPath::closed_form);
}

double fhit(const ChannelGeometry& g, double t) {
  g.validate();
  if (t < 0.0) throw std::domain_error("fhit: t must be nonnegative");
  if (t == 0.0) return 0.0;
  return g.gamma() * specfun::erfc(g.d() / std::sqrt(4.0 * g.D * t));
}

double r0_star(const ChannelGeometry& g, double theta) {
  g.validate();
  check_alpha(theta);
  return std::sqrt(g.r0 * g.r0 + g.rr * g.rr -
                   2.0 * g.r0 * g.rr * std::cos(theta));
}

double p_theta_inf(const ChannelGeometry& g, double theta) {
  g.validate();
  check_alpha(theta);
  const double gm = g.gamma();
  return g.rr * (1.0 - gm * gm) * std::sin(theta) /
         (2.0 * g.r0 * kernel32(g, theta));
}

double p_theta_inf_argmax(const ChannelGeometry& g) {
  g.validate();
  const double gm = g.gamma();
  const double b = 1.0 + gm * gm;
  const double c = (-b + std::sqrt(b * b + 12.0 * gm * gm)) / (2.0 * gm);
  return std::acos(c);
}

double p_theta_t(const ChannelGeometry& g, double theta, double t) {
  g.validate();
  check_alpha(theta);
  if (!(t > 0.0)) throw std::domain_error("p_theta_t: t must be positive");
  const double inv_sqrt4dt = 1.0 / std::sqrt(4.0 * g.D * t);
  return std::sin(theta) * specfun::erfc(r0_star(g, theta) * inv_sqrt4dt) *
         fhit(g, t) / (kernel32(g, theta) * u_of_t(g, t));
}

double u_of_t(const ChannelGeometry& g, double t, FPath path) {
  g.validate();
  if (!(t > 0.0)) throw std::domain_error("u_of_t: t must be positive");
  if (path == FPath::quadrature) return kernel_quadrature(g, 0.0, kPi, t);
  return kernel_integral(g, g.d(), g.r0 + g.rr, t);
}

double f_alpha_t(const ChannelGeometry& g, double alpha, double t, FPath path) {
  g.validate();
  check_alpha(alpha);
  if (t < 0.0) throw std::domain_error("f_alpha_t: t must be nonnegative");
  if (t == 0.0 || alpha == 0.0) return 0.0;
  if (path == FPath::quadrature) {
    return fhit(g, t) * kernel_quadrature(g, 0.0, alpha, t) /
           kernel_quadrature(g, 0.0, kPi, t);
  }
  const double s_a = r0_star(g, alpha);
  return fhit(g, t) * kernel_integral(g, g.d(), s_a, t) /
         kernel_integral(g, g.d(), g.r0 + g.rr, t);
}

double f_alpha_inf(const ChannelGeometry& g, double alpha) {
  g.validate();
  check_alpha(alpha);
  if (alpha == 0.0) return 0.0;
  const double s_a = r0_star(g, alpha);
  return g.gamma() * kernel_integral_inf(g, g.d(), s_a) /
         kernel_integral_inf(g, g.d(), g.r0 + g.rr);
}

TapVector taps(const ChannelGeometry& g, double alpha, double ts,
               std::size_t L, FPath path) {
  g.validate();
  check_alpha(alpha);
  if (!(ts > 0.0)) throw std::domain_error("taps: ts must be positive");
  if (L < 1) throw std::domain_error("taps: L must be at least 1");
  TapVector tv{{}, ts, alpha, g};
  tv.taps.reserve(L);
  double prev = 0.0;
  for (std::size_t n = 1; n <= L; ++n) {
    const double cur = f_alpha_t(g, alpha, static_cast<double>(n) * ts, path);
    tv.taps.push_back(cur - prev);
    prev = cur;
  }
  return tv;
}

std::size_t memory_length(const ChannelGeometry& g, double alpha, double ts,
                          double rel_tol, std::size_t max_len) {
  g.validate();
  check_alpha(alpha);
  if (!(ts > 0.0)) throw std::domain_error("memory_length: ts must be positive");
  const double target = (1.0 - rel_tol) * f_alpha_inf(g, alpha);
  for (std::size_t L = 1; L < max_len; ++L) {
    if (f_alpha_t(g, alpha, static_cast<double>(L) * ts,
                  FPath::closed_form) >= target)
      return L;
  }
  return max_len;
}

double peak_time(const ChannelGeometry& g, double alpha) {
  g.validate();
  if (!(alpha > 0.0 && alpha <= kPi))
    throw std::domain_error("peak_time: alpha must lie in (0, pi]");
  const auto rate = [&](double log_t) {
    const double t = std::exp(log_t);
    const double h = std::max(1e-6, 1e-4 * t);
    return (f_alpha_t(g, alpha, t + h, FPath::closed_form) -
            f_alpha_t(g, alpha, t - h, FPath::closed_form)) /
           (2.0 * h);
  };
  const double lo = std::log(1e-6);
  const double hi = std::log(1e3);
  const double log_peak = opt::golden_max(rate, lo, hi, 1e-8);
  const double t_peak = std::exp(log_peak);
  if (!(t_peak > 1.5e-6 && t_peak < 0.9e3))
    throw quad::NumericError("peak_time: no interior maximum bracketed");
  return t_peak;
}

}  // namespace pcmc::channel
