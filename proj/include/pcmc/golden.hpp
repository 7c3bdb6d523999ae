#pragma once

#include <cmath>

namespace pcmc::opt {

/// Golden-section maximization of a unimodal function on [a, b].
/// Returns the abscissa of the maximum to relative tolerance rel_tol.
template <class F>
double golden_max(const F& f, double a, double b, double rel_tol = 1e-6,
                  int max_iters = 200) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iters; ++i) {
    if (b - a <= rel_tol * (std::abs(a) + std::abs(b))) break;
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace pcmc::opt
