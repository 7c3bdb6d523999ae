#pragma once

#include <cstddef>
#include <vector>

namespace pcmc::channel {

/// Point transmitter at distance r0 from the center of an absorbing
/// sphere of radius rr, free diffusion with coefficient D.
/// Units are micrometers and seconds throughout.
struct ChannelGeometry {
  double r0;  // Tx to receiver-center distance [um]
  double rr;  // receiver radius [um]
  double D;   // diffusion coefficient [um^2/s]

  void validate() const;
  double d() const { return r0 - rr; }        // closest Tx-to-surface distance
  double gamma() const { return rr / r0; }    // geometry ratio
};

/// Spherical cap of half-angle alpha (radians) facing the transmitter.
/// alpha = pi is the conventional fully counting receiver.
struct CountingRegion {
  double alpha;

  void validate() const;
};

/// Which evaluation route F(alpha, t) takes. The quadrature of the joint
/// density is the reference; the closed form is the erfc/Ei antiderivative
/// of the same integral and is cross-checked against it in tests.
enum class FPath { quadrature, closed_form };

/// Per-slot absorption probabilities p_n = F(alpha, n ts) - F(alpha, (n-1) ts).
struct TapVector {
  std::vector<double> taps;
  double symbol_duration;
  double alpha;
  ChannelGeometry geometry;

  double sum() const;
  /// F(alpha, infinity) - F(alpha, L ts): probability mass beyond the last tap.
  double tail() const;
};

/// Marginal first-hitting CDF of the fully absorbing sphere,
/// (rr/r0) erfc((r0-rr)/sqrt(4Dt)). Defined as 0 at t = 0.
double fhit(const ChannelGeometry& g, double t);

/// Distance from Tx to the surface point at polar angle theta (cosine rule).
double r0_star(const ChannelGeometry& g, double theta);

/// Marginal angular density of absorbed molecules as t -> infinity,
/// 2 pi rr^2 sin(theta) eps(theta). Integrates to rr/r0 over [0, pi].
double p_theta_inf(const ChannelGeometry& g, double theta);

/// Angle at which p_theta_inf attains its maximum (closed form in gamma).
double p_theta_inf_argmax(const ChannelGeometry& g);

/// Joint angle-time density: p_theta_inf's kernel reweighted by
/// erfc(r0*(theta)/sqrt(4Dt)) and normalized so the [0, pi] integral is fhit(t).
double p_theta_t(const ChannelGeometry& g, double theta, double t);

/// The normalizing integral over theta of the reweighted kernel,
/// int_0^pi erfc(r0*/sqrt(4Dt)) sin(theta) / (1 - 2 g cos(theta) + g^2)^{3/2}.
double u_of_t(const ChannelGeometry& g, double t, FPath path = FPath::closed_form);

/// Joint cumulative probability that a molecule is absorbed within the cap
/// of half-angle alpha by time t. F(0, t) = 0, F(pi, t) = fhit(t).
double f_alpha_t(const ChannelGeometry& g, double alpha, double t,
                 FPath path = FPath::quadrature);

/// t -> infinity limit of f_alpha_t, in closed form.
double f_alpha_inf(const ChannelGeometry& g, double alpha);

/// Channel taps for symbol duration ts, explicit memory length L.
TapVector taps(const ChannelGeometry& g, double alpha, double ts, std::size_t L,
               FPath path = FPath::quadrature);

/// Memory length needed so the tail beyond L explicit taps is below
/// rel_tol * F(alpha, inf), capped at max_len (the heavy 1/sqrt(t) tail
/// makes the uncapped rule astronomically long; the cap is the practical
/// default and the remainder is carried by TapVector::tail()).
std::size_t memory_length(const ChannelGeometry& g, double alpha, double ts,
                          double rel_tol = 1e-4, std::size_t max_len = 256);

/// Time at which the hitting rate dF(alpha, t)/dt peaks. Central finite
/// differences + golden-section search in log-time on [1e-6, 1e3] s.
double peak_time(const ChannelGeometry& g, double alpha);

}  // namespace pcmc::channel
