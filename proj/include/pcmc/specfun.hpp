#pragma once

namespace pcmc::specfun {

/// Accuracy contract for the special-function evaluations below.
struct Accuracy {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;

  void validate() const;
};

/// Complementary error function, own implementation (power series for
/// |x| < 2, Lentz continued fraction beyond). Satisfies erfc(0) = 1 and
/// the reflection identity erfc(x) + erfc(-x) = 2 exactly.
double erfc(double x);

/// Inverse of erfc on (0, 2). Newton-refined to full double precision.
double erfc_inv(double p);

/// Exponential integral Ei(x) for strictly negative x, Ei(x) = -E1(-x).
/// Log+series form for |x| <= 1, continued fraction for x < -1.
double expint_ei(double x);

}  // namespace pcmc::specfun
