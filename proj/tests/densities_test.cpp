#include "rmt/densities.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "rmt/quadrature.hpp"
#include "rmt/specfun.hpp"
#include "testutil.hpp"

using namespace rmt;
using rmttest::rel_err;

TEST_SUITE("densities") {

TEST_CASE("bm_kernel point values") {
  CHECK(rel_err(bm_kernel(1.0, 0.0, 0.0), 1.0 / std::sqrt(2.0 * M_PI)) <
        1e-14);
  // negative time at an imaginary endpoint stays real:
  // -(0 - i)^2/(2 (-1)) = -1/2
  cplx v = bm_kernel(-1.0, cplx(0.0, 1.0), 0.0);
  CHECK(rel_err(v.real(), std::exp(-0.5) / std::sqrt(2.0 * M_PI)) < 1e-14);
  CHECK(std::abs(v.imag()) < 1e-16);
}

TEST_CASE("bm_kernel rejects t = 0 and is symmetric in the endpoints") {
  CHECK_THROWS_AS(bm_kernel(0.0, 1.0, 0.0), delta_measure_error);
  CHECK(rel_err(bm_kernel(0.7, cplx(1.3, 0.2), cplx(-0.4, 0.0)),
                bm_kernel(0.7, cplx(-0.4, 0.0), cplx(1.3, 0.2))) < 1e-15);
}

TEST_CASE("bm_kernel normalizes and composes (Chapman-Kolmogorov)") {
  for (double t : {0.3, 1.0, 2.0}) {
    double mass = integrate_line(
        [t](double y) { return bm_kernel(t, y, 0.8).real(); }, 0.8,
        std::sqrt(t));
    CHECK(std::abs(mass - 1.0) < 1e-8);
  }
  const double pairs[][2] = {{-4.0, 1.5}, {0.0, 0.0}, {2.7, -3.3}};
  for (double s : {0.3, 1.0, 2.0})
    for (double t : {0.3, 2.0})
      for (auto& p : pairs) {
        double z = p[0], x = p[1];
        double composed = integrate_line(
            [&](double y) {
              return bm_kernel(s, z, y).real() * bm_kernel(t, y, x).real();
            },
            (z + x) / 2.0, std::sqrt(s + t), 32, 32);
        CHECK(rel_err(composed, bm_kernel(s + t, z, x).real()) < 1e-8);
      }
}

TEST_CASE("besq_kernel x = 0 branch") {
  CHECK(rel_err(besq_kernel(0.0, 0.5, 1.0, 0.0), std::exp(-1.0)) < 1e-13);
  // nu > 0 general x = 0 value: y^nu e^{-y/2t} / ((2t)^{nu+1} Gamma(nu+1))
  double nu = 1.3, t = 0.7, y = 0.9;
  double want = std::pow(y, nu) * std::exp(-y / (2.0 * t)) /
                (std::pow(2.0 * t, nu + 1.0) * std::exp(log_gamma(nu + 1.0)));
  CHECK(rel_err(besq_kernel(nu, t, y, 0.0), want) < 1e-13);
}

TEST_CASE("besq_kernel positive-time I-Bessel form") {
  for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.3})
    for (double t : {0.4, 1.1})
      for (double x : {0.3, 1.8})
        for (double y : {0.6, 2.4}) {
          double want = 0.5 / t * std::pow(y / x, nu / 2.0) *
                        std::exp(-(x + y) / (2.0 * t)) *
                        bessel_i(nu, std::sqrt(x * y) / t).real();
          CHECK(rel_err(besq_kernel(nu, t, y, x), want) < 1e-12);
        }
}

TEST_CASE("besq_kernel negative-time J-Bessel form") {
  // one endpoint -r <= 0, partner > 0: the phases cancel to a real value
  for (double nu : {-0.5, 0.0, 0.7, 2.3})
    for (double tau : {0.5, 1.2})
      for (double r : {0.4, 1.7})
        for (double partner : {0.8, 2.1}) {
          double common = 0.5 / tau * std::exp((partner - r) / (2.0 * tau)) *
                          bessel_j(nu, std::sqrt(partner * r) / tau);
          // the |y|^nu weight sits on the destination endpoint
          CHECK(rel_err(besq_kernel(nu, -tau, -r, partner),
                        std::pow(r / partner, nu / 2.0) * common) < 1e-10);
          CHECK(rel_err(besq_kernel(nu, -tau, partner, -r),
                        std::pow(partner / r, nu / 2.0) * common) < 1e-10);
        }
}

TEST_CASE("besq_kernel domain guards") {
  CHECK_THROWS_AS(besq_kernel(0.0, 0.0, 1.0, 1.0), delta_measure_error);
  CHECK_THROWS_AS(besq_kernel(-1.0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(besq_kernel(-1.5, 1.0, 1.0, 1.0), std::invalid_argument);
  // positive time needs nonnegative endpoints
  CHECK_THROWS_AS(besq_kernel(0.5, 1.0, 1.0, -0.2), std::invalid_argument);
  CHECK_THROWS_AS(besq_kernel(0.5, 1.0, -0.2, 1.0), std::invalid_argument);
  // negative time needs at least one endpoint <= 0 ...
  CHECK_THROWS_AS(besq_kernel(0.5, -1.0, 1.0, 1.0), std::invalid_argument);
  // ... and at most one endpoint < 0
  CHECK_THROWS_AS(besq_kernel(0.5, -1.0, -1.0, -0.5), std::invalid_argument);
}

TEST_CASE("besq_kernel normalizes at positive time") {
  for (double nu : {-0.5, 0.0, 1.0, 2.3})
    for (double t : {0.5, 1.3}) {
      double x = 1.1;
      double mass = integrate_halfline(
          [&](double y) { return besq_kernel(nu, t, y, x); }, 2.0 * t,
          std::floor(nu) != nu, 32, 32);
      CHECK(std::abs(mass - 1.0) < 1e-8);
    }
}

TEST_CASE("besq_kernel normalizes over the negative axis at negative time") {
  for (double nu : {-0.5, 0.0, 1.0, 2.3})
    for (double tau : {0.5, 1.0})
      for (double x : {0.0, 1.3}) {
        double mass = integrate_halfline(
            [&](double r) { return besq_kernel(nu, -tau, -r, x); }, 2.0 * tau,
            std::floor(nu) != nu, 32, 32);
        CHECK(std::abs(mass - 1.0) < 1e-8);
      }
}

TEST_CASE("besq_kernel detailed balance: x^nu p(t,y|x) symmetric in (x,y)") {
  for (double nu : {-0.5, 0.3, 1.7}) {
    double t = 0.8, x = 0.9, y = 2.2;
    CHECK(rel_err(std::pow(x, nu) * besq_kernel(nu, t, y, x),
                  std::pow(y, nu) * besq_kernel(nu, t, x, y)) < 1e-12);
  }
}

TEST_CASE("besq_kernel composes (Chapman-Kolmogorov)") {
  for (double nu : {-0.5, 0.0, 0.5, 1.0, 2.3})
    for (double s : {0.3, 1.0})
      for (double t : {0.5, 2.0}) {
        double z = 1.4, x = 0.7;
        double scale = 2.0 * s * t / (s + t);
        double composed = integrate_halfline(
            [&](double y) {
              return besq_kernel(nu, s, z, y) * besq_kernel(nu, t, y, x);
            },
            scale, std::floor(nu) != nu, 32, 32);
        CHECK(rel_err(composed, besq_kernel(nu, s + t, z, x)) < 1e-6);
      }
}

TEST_CASE("km_det_bm basics") {
  double t = 0.7;
  CHECK(rel_err(km_det_bm(t, {1.2}, {0.3}),
                bm_kernel(t, 1.2, 0.3).real()) < 1e-15);
  // 2x2 against the hand-expanded determinant
  std::vector<double> y{0.4, 1.6}, x{-0.5, 0.8};
  double hand = bm_kernel(t, y[0], x[0]).real() *
                    bm_kernel(t, y[1], x[1]).real() -
                bm_kernel(t, y[0], x[1]).real() *
                    bm_kernel(t, y[1], x[0]).real();
  CHECK(rel_err(km_det_bm(t, y, x), hand) < 1e-13);
  // antisymmetry under swapping two starting points
  CHECK(rel_err(km_det_bm(t, y, {0.8, -0.5}), -km_det_bm(t, y, x)) < 1e-13);
  CHECK_THROWS_AS(km_det_bm(t, {0.1, 0.2}, {0.3}), std::invalid_argument);
  CHECK_THROWS_AS(km_det_bm(t, {0.1, 0.1}, {0.3, 0.4}), std::invalid_argument);
}

TEST_CASE("km_det_besq basics") {
  double nu = 0.6, t = 0.9;
  CHECK(rel_err(km_det_besq(nu, t, {1.2}, {0.3}),
                besq_kernel(nu, t, 1.2, 0.3)) < 1e-15);
  std::vector<double> y{0.4, 1.6}, x{0.2, 0.8};
  double hand = besq_kernel(nu, t, y[0], x[0]) * besq_kernel(nu, t, y[1], x[1]) -
                besq_kernel(nu, t, y[0], x[1]) * besq_kernel(nu, t, y[1], x[0]);
  CHECK(rel_err(km_det_besq(nu, t, y, x), hand) < 1e-13);
  CHECK(rel_err(km_det_besq(nu, t, y, {0.8, 0.2}), -km_det_besq(nu, t, y, x)) <
        1e-13);
  CHECK_THROWS_AS(km_det_besq(nu, t, {0.1, 0.1}, {0.3, 0.4}),
                  std::invalid_argument);
}

}  // TEST_SUITE
