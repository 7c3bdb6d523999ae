#include <cmath>
#include <numbers>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "pcmc/channel.hpp"
#include "pcmc/quadrature.hpp"

namespace chan = pcmc::channel;
namespace oracle = pcmc::oracle;

namespace {
constexpr double kPi = std::numbers::pi;
const chan::ChannelGeometry kRef{10.0, 5.0, 80.0};
}  // namespace

TEST_CASE("geometry validation") {
  CHECK_NOTHROW(kRef.validate());
  CHECK_THROWS_AS((chan::ChannelGeometry{5.0, 10.0, 80.0}.validate()),
                  std::domain_error);
  CHECK_THROWS_AS((chan::ChannelGeometry{10.0, 5.0, -1.0}.validate()),
                  std::domain_error);
  CHECK(kRef.d() == 5.0);
  CHECK(kRef.gamma() == 0.5);
}

TEST_CASE("fhit matches frozen values and limits") {
  CHECK(chan::fhit(kRef, 0.0) == 0.0);
  CHECK(chan::fhit(kRef, 1.0) == doctest::Approx(oracle::kFhit1).epsilon(1e-12));
  CHECK(chan::fhit(kRef, 0.15) ==
        doctest::Approx(oracle::kFhit015).epsilon(1e-12));
  CHECK(chan::fhit(kRef, 1e12) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK_THROWS_AS(chan::fhit(kRef, -1.0), std::domain_error);
}

TEST_CASE("r0_star endpoints follow the cosine rule") {
  CHECK(chan::r0_star(kRef, 0.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(chan::r0_star(kRef, kPi) == doctest::Approx(15.0).epsilon(1e-14));
  const double mid = chan::r0_star(kRef, kPi / 2);
  CHECK(mid == doctest::Approx(std::sqrt(125.0)).epsilon(1e-14));
}

TEST_CASE("p_theta_inf integrates to gamma and peaks at the closed-form angle") {
  const double mass = pcmc::quad::integrate(
      [&](double th) { return chan::p_theta_inf(kRef, th); }, 0.0, kPi, 1e-12);
  CHECK(mass == doctest::Approx(kRef.gamma()).epsilon(1e-10));

  const double theta_star = chan::p_theta_inf_argmax(kRef);
  CHECK(theta_star * 180.0 / kPi ==
        doctest::Approx(oracle::kThetaStarDeg).epsilon(1e-10));
  const double h = 1e-6;
  const double d1 = (chan::p_theta_inf(kRef, theta_star + h) -
                     chan::p_theta_inf(kRef, theta_star - h)) /
                    (2.0 * h);
  CHECK(d1 == doctest::Approx(0.0).epsilon(1e-5));
}

TEST_CASE("p_theta_t integrates to fhit at each time") {
  for (double t : {0.05, 0.15, 1.0, 10.0}) {
    const double mass = pcmc::quad::integrate(
        [&](double th) { return chan::p_theta_t(kRef, th, t); }, 0.0, kPi,
        1e-12);
    CHECK(mass == doctest::Approx(chan::fhit(kRef, t)).epsilon(1e-8));
  }
}

TEST_CASE("u_of_t closed form equals the quadrature and frozen values") {
  for (double t : {0.02, 0.15, 1.0, 5.0}) {
    const double q = chan::u_of_t(kRef, t, chan::FPath::quadrature);
    const double c = chan::u_of_t(kRef, t, chan::FPath::closed_form);
    CHECK(c == doctest::Approx(q).epsilon(1e-9));
  }
  CHECK(chan::u_of_t(kRef, 0.15) == doctest::Approx(oracle::kU015).epsilon(1e-10));
  CHECK(chan::u_of_t(kRef, 1.0) == doctest::Approx(oracle::kU1).epsilon(1e-10));
}

TEST_CASE("f_alpha_t marginal recovery, frozen values and path agreement") {
  for (double t : {0.05, 0.15, 1.0}) {
    CHECK(chan::f_alpha_t(kRef, kPi, t) ==
          doctest::Approx(chan::fhit(kRef, t)).epsilon(1e-9));
    CHECK(chan::f_alpha_t(kRef, 0.0, t) == 0.0);
  }
  CHECK(chan::f_alpha_t(kRef, kPi / 3, 1.0) ==
        doctest::Approx(oracle::kFThird1).epsilon(1e-9));
  CHECK(chan::f_alpha_t(kRef, kPi / 6, 0.15) ==
        doctest::Approx(oracle::kFSixth015).epsilon(1e-9));
  CHECK(chan::f_alpha_t(kRef, kPi / 2, 10.0) ==
        doctest::Approx(oracle::kFHalf10).epsilon(1e-9));
  for (double a : {kPi / 6, kPi / 4, kPi / 2, 2.5})
    for (double t : {0.01, 0.15, 1.0, 10.0})
      CHECK(chan::f_alpha_t(kRef, a, t, chan::FPath::closed_form) ==
            doctest::Approx(chan::f_alpha_t(kRef, a, t, chan::FPath::quadrature))
                .epsilon(1e-9));
}

TEST_CASE("f_alpha_t is nondecreasing in alpha and in t") {
  double prev = 0.0;
  for (double a = 0.1; a <= kPi; a += 0.2) {
    const double v = chan::f_alpha_t(kRef, std::min(a, kPi), 0.5);
    CHECK(v >= prev);
    prev = v;
  }
  prev = 0.0;
  for (double t = 0.05; t <= 3.0; t += 0.25) {
    const double v = chan::f_alpha_t(kRef, 1.0, t);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("f_alpha_inf limits and frozen value") {
  CHECK(chan::f_alpha_inf(kRef, kPi) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(chan::f_alpha_inf(kRef, 0.0) == 0.0);
  CHECK(chan::f_alpha_inf(kRef, kPi / 2) ==
        doctest::Approx(oracle::kFinfHalfPi).epsilon(1e-12));
  // Large-t convergence of f_alpha_t to the limit.
  CHECK(chan::f_alpha_t(kRef, kPi / 2, 1e5, chan::FPath::closed_form) ==
        doctest::Approx(oracle::kFinfHalfPi).epsilon(1e-3));
}

TEST_CASE("taps telescope to F(alpha, L ts)") {
  const double alpha = kPi / 3;
  const double ts = 0.15;
  const chan::TapVector tv = chan::taps(kRef, alpha, ts, 12);
  REQUIRE(tv.taps.size() == 12);
  CHECK(tv.sum() ==
        doctest::Approx(chan::f_alpha_t(kRef, alpha, 12 * ts)).epsilon(1e-10));
  for (double p : tv.taps) CHECK(p >= 0.0);
  CHECK(tv.taps[0] > tv.taps[1]);  // first tap dominates at this ts
  CHECK(tv.tail() ==
        doctest::Approx(chan::f_alpha_inf(kRef, alpha) - tv.sum()).epsilon(1e-8));
}

TEST_CASE("memory_length hits the cap for the reference configuration") {
  // The 1/sqrt(t) tail makes the uncapped rule astronomically long.
  CHECK(chan::memory_length(kRef, kPi / 3, 0.15, 1e-4, 256) == 256);
  // A loose tolerance terminates before the cap.
  const std::size_t l = chan::memory_length(kRef, kPi / 3, 0.15, 0.5, 256);
  CHECK(l >= 1);
  CHECK(l < 256);
}

TEST_CASE("peak_time matches d^2/(6D) for the full sphere") {
  for (double d : {3.0, 5.0, 8.0}) {
    const chan::ChannelGeometry g{5.0 + d, 5.0, 80.0};
    CHECK(chan::peak_time(g, kPi) ==
          doctest::Approx(d * d / (6.0 * 80.0)).epsilon(1e-3));
  }
}

TEST_CASE("peak_time is earlier for smaller counting regions") {
  CHECK(chan::peak_time(kRef, kPi / 6) < chan::peak_time(kRef, kPi));
}

TEST_CASE("alpha domain checks") {
  CHECK_THROWS_AS(chan::f_alpha_t(kRef, -0.1, 1.0), std::domain_error);
  CHECK_THROWS_AS(chan::f_alpha_t(kRef, 3.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(chan::taps(kRef, 1.0, -0.1, 4), std::domain_error);
  CHECK_THROWS_AS(chan::peak_time(kRef, 0.0), std::domain_error);
}
