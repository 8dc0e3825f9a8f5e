#include "rmt/ensembles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "rmt/biorth.hpp"
#include "rmt/quadrature.hpp"
#include "testutil.hpp"

using namespace rmt;
using rmttest::rel_err;

namespace {

struct Summary {
  double mean = 0.0, se = 0.0;
};

Summary summarize(const std::vector<double>& v) {
  Summary s;
  for (double x : v) s.mean += x;
  s.mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - s.mean) * (x - s.mean);
  var /= static_cast<double>(v.size() - 1);
  s.se = std::sqrt(var / static_cast<double>(v.size()));
  return s;
}

// One-sample Kolmogorov-Smirnov statistic of `points` against the CDF of
// the marginal eigenvalue density (the normalized kernel diagonal),
// accumulated by per-gap Gauss-Legendre panels between the sorted points.
// For the Laguerre case the x = u^2 substitution removes the x^nu endpoint
// singularity.
double ks_statistic(std::vector<double> pts,
                    const std::function<double(double)>& density,
                    bool halfline) {
  std::sort(pts.begin(), pts.end());
  size_t n = pts.size();
  auto seg = [&](double a, double b) {
    if (halfline) {
      auto f = [&](double u) { return 2.0 * u * density(u * u); };
      return integrate(f, std::sqrt(std::max(0.0, a)), std::sqrt(b), 2, 8);
    }
    return integrate(density, a, b, 2, 8);
  };
  double lo = halfline ? 0.0 : pts.front() - 8.0;
  double cdf = seg(lo, pts.front());
  double d = 0.0;
  for (size_t i = 0; i < n; ++i) {
    if (i > 0) cdf += seg(pts[i - 1], pts[i]);
    double hi = static_cast<double>(i + 1) / n;
    double lo_i = static_cast<double>(i) / n;
    d = std::max({d, std::abs(cdf - hi), std::abs(cdf - lo_i)});
  }
  return d;
}

// Independent bidiagonal sampler used as a cross-oracle for the Wishart
// route at integer nu: B diag chi_{2(N+nu-j)}, subdiag chi_{2(N-j)},
// eigenvalues of sigma2 * B B^T.
Configuration bidiagonal_draw(int N, double nu, double sigma2,
                              PhiloxStream& rng) {
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < N; ++j) {
    b(j, j) = rng.next_chi(2.0 * (N + nu - j));
    if (j > 0) b(j, j - 1) = rng.next_chi(2.0 * (N - j));
  }
  Eigen::MatrixXd w = b * b.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(w,
                                                    Eigen::EigenvaluesOnly);
  Configuration x(N);
  for (int i = 0; i < N; ++i) x[i] = sigma2 * es.eigenvalues()(i);
  return x;
}

}  // namespace

TEST_SUITE("ensembles") {

TEST_CASE("gue_pdf values and normalization") {
  CHECK(rel_err(gue_pdf(1, 1.0, {0.0}), 1.0 / std::sqrt(2.0 * M_PI)) < 1e-14);
  CHECK(gue_pdf(2, 1.0, {0.7, 0.7}) == 0.0);
  // ordered-sector normalization over x1 < x2
  double total = integrate(
      [](double x2) {
        return integrate(
            [x2](double x1) { return gue_pdf(2, 1.0, {x1, x2}); }, -8.0, x2,
            16, 24);
      },
      -8.0, 8.0, 24, 24);
  CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("chgue_pdf values and normalization") {
  for (double x : {0.3, 1.7})
    CHECK(rel_err(chgue_pdf(1, 0.0, 0.5, {x}), std::exp(-x)) < 1e-13);
  CHECK(chgue_pdf(2, 1.0, 0.5, {0.4, 0.4}) == 0.0);
  CHECK_THROWS_AS(chgue_pdf(1, 0.0, 0.5, {-0.1}), std::invalid_argument);
  double total = integrate_halfline(
      [](double x) { return chgue_pdf(1, -0.5, 0.5, {x}); }, 1.0, true, 32,
      32);
  CHECK(std::abs(total - 1.0) < 1e-6);
}

TEST_CASE("ensemble spec validation and reduced indices") {
  CHECK(EnsembleSpec::class_c(2, 1.0).effective_nu() == doctest::Approx(0.5));
  CHECK(EnsembleSpec::class_d(2, 1.0).effective_nu() ==
        doctest::Approx(-0.5));
  CHECK_THROWS_AS(EnsembleSpec::chgue(2, -1.0, 1.0).validate(),
                  std::invalid_argument);
  CHECK_THROWS_AS(EnsembleSpec::gue(2, 0.0).validate(), std::invalid_argument);
  CHECK_THROWS_AS(EnsembleSpec::gue(0, 1.0).validate(), std::invalid_argument);
}

TEST_CASE("sample_gue determinism, ordering, N = 1 law") {
  Configuration a = sample_gue(3, 0.8, 42), b = sample_gue(3, 0.8, 42);
  CHECK(a == b);
  CHECK(std::is_sorted(a.begin(), a.end()));

  int n = 4000;
  std::vector<double> firsts(n), seconds(n);
  for (int i = 0; i < n; ++i) {
    double v = sample_gue(1, 0.49, 1000 + i)[0];
    firsts[i] = v;
    seconds[i] = v * v;
  }
  Summary m = summarize(firsts), m2 = summarize(seconds);
  CHECK(std::abs(m.mean) < 3.5 * m.se);
  CHECK(std::abs(m2.mean - 0.49) < 3.5 * m2.se);
}

TEST_CASE("sample_gue trace-square moment") {
  // E sum lambda^2 = E tr H^2 = N^2 sigma^2
  int N = 3, n = 4000;
  double s2 = 0.8;
  std::vector<double> t2(n);
  for (int i = 0; i < n; ++i) {
    Configuration x = sample_gue(N, s2, 77000 + i);
    double acc = 0.0;
    for (double v : x) acc += v * v;
    t2[i] = acc;
  }
  Summary s = summarize(t2);
  CHECK(std::abs(s.mean - N * N * s2) < 3.5 * s.se);
}

TEST_CASE("sample_chgue moments for integer and fractional index") {
  // E sum x = 2 sigma2 N (N + nu), both sampler routes
  int n = 4000;
  for (double nu : {1.0, 0.7, -0.5}) {
    int N = 2;
    double s2 = 0.6;
    std::vector<double> tr(n);
    for (int i = 0; i < n; ++i) {
      Configuration x = sample_chgue(N, nu, s2, 31000 + i);
      REQUIRE(std::is_sorted(x.begin(), x.end()));
      REQUIRE(x.front() >= 0.0);
      tr[i] = x[0] + x[1];
    }
    Summary s = summarize(tr);
    CHECK(std::abs(s.mean - 2.0 * s2 * N * (N + nu)) < 3.5 * s.se);
  }
  CHECK_THROWS_AS(sample_chgue(2, -1.2, 1.0, 1), std::invalid_argument);
}

TEST_CASE("wishart route matches an independent bidiagonal sampler") {
  // first three moments of tr M^dagger M at nu = 1
  int N = 2, n = 20000;
  double nu = 1.0, s2 = 0.5;
  std::vector<double> w1(n), w2(n), w3(n), b1(n), b2(n), b3(n);
  PhiloxStream rng(424242, 0);
  for (int i = 0; i < n; ++i) {
    Configuration xw = sample_chgue(N, nu, s2, 900000 + i);
    double tw = xw[0] + xw[1];
    w1[i] = tw;
    w2[i] = tw * tw;
    w3[i] = tw * tw * tw;
    Configuration xb = bidiagonal_draw(N, nu, s2, rng);
    double tb = xb[0] + xb[1];
    b1[i] = tb;
    b2[i] = tb * tb;
    b3[i] = tb * tb * tb;
  }
  auto z = [](const Summary& a, const Summary& b) {
    return std::abs(a.mean - b.mean) / std::sqrt(a.se * a.se + b.se * b.se);
  };
  CHECK(z(summarize(w1), summarize(b1)) < 3.0);
  CHECK(z(summarize(w2), summarize(b2)) < 3.0);
  CHECK(z(summarize(w3), summarize(b3)) < 3.0);
  // and against the exact first moment 2 sigma2 N (N + nu)
  Summary s = summarize(w1);
  CHECK(std::abs(s.mean - 2.0 * s2 * N * (N + nu)) < 3.5 * s.se);
}

TEST_CASE("pooled eigenvalue marginals pass a KS test against the pdf") {
  // marginal density = kernel diagonal / N at total time sigma2
  int draws = 20000;
  {
    int N = 3;
    double s2 = 0.7;
    std::vector<double> pool;
    pool.reserve(static_cast<size_t>(N) * draws);
    for (int i = 0; i < draws; ++i)
      for (double v : sample_gue(N, s2, 50000 + i)) pool.push_back(v);
    double d = ks_statistic(
        pool,
        [N, s2](double x) { return ext_hermite_kernel(N, s2, x, x) / N; },
        false);
    double crit = 1.628 / std::sqrt(static_cast<double>(pool.size()));
    CHECK(d < crit);
  }
  for (double nu : {-0.5, 0.0, 0.5, 2.0}) {
    int N = 2;
    double s2 = 0.5;
    std::vector<double> pool;
    pool.reserve(static_cast<size_t>(N) * draws);
    for (int i = 0; i < draws; ++i)
      for (double v : sample_chgue(N, nu, s2, 60000 + i)) pool.push_back(v);
    double d = ks_statistic(
        pool,
        [N, nu, s2](double x) {
          return ext_laguerre_kernel(N, nu, s2, x, x) / N;
        },
        true);
    double crit = 1.628 / std::sqrt(static_cast<double>(pool.size()));
    CHECK(d < crit);
  }
}

TEST_CASE("sample_configuration with stream zero matches the samplers") {
  PhiloxStream g(91, 0);
  CHECK(sample_configuration(EnsembleSpec::gue(3, 0.8), g) ==
        sample_gue(3, 0.8, 91));
  PhiloxStream c(92, 0);
  CHECK(sample_configuration(EnsembleSpec::chgue(2, 0.7, 0.5), c) ==
        sample_chgue(2, 0.7, 0.5, 92));
}

TEST_CASE("mc_expectation of a constant") {
  McReport r = mc_expectation(
      EnsembleSpec::gue(2, 1.0),
      [](const Configuration&) { return cplx(2.5, -1.0); }, 100, 7);
  CHECK(rel_err(r.estimate, cplx(2.5, -1.0)) < 1e-15);
  CHECK(r.stderr_val == 0.0);
  CHECK(r.samples == 100);
  CHECK(r.seed == 7);
}

TEST_CASE("mc_expectation moment identity and stderr scaling") {
  auto f = [](const Configuration& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return cplx(acc, 0.0);
  };
  EnsembleSpec spec = EnsembleSpec::gue(2, 1.0);
  McReport r = mc_expectation(spec, f, 20000, 11);
  CHECK(std::abs(r.estimate.real() - 4.0) < 3.0 * r.stderr_val);
  McReport half = mc_expectation(spec, f, 10000, 11);
  double ratio = r.stderr_val / half.stderr_val;
  CHECK(ratio > 1.0 / std::sqrt(2.0) * 0.8);
  CHECK(ratio < 1.0 / std::sqrt(2.0) * 1.2);
}

TEST_CASE("mc_expectation is bitwise identical across thread counts") {
  auto f = [](const Configuration& x) {
    return cplx(x.back() - x.front(), x.front() * x.back());
  };
  EnsembleSpec spec = EnsembleSpec::chgue(2, 0.5, 0.7);
  McReport one = mc_expectation(spec, f, 3000, 123, 1);
  McReport four = mc_expectation(spec, f, 3000, 123, 4);
  CHECK(one.estimate.real() == four.estimate.real());
  CHECK(one.estimate.imag() == four.estimate.imag());
  CHECK(one.stderr_val == four.stderr_val);
}

TEST_CASE("class C and class D specs sample the reduced laws") {
  auto tr = [](const Configuration& x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return cplx(acc, 0.0);
  };
  McReport c = mc_expectation(EnsembleSpec::class_c(2, 0.5), tr, 20000, 5);
  CHECK(std::abs(c.estimate.real() - 2.0 * 0.5 * 2 * (2 + 0.5)) <
        3.0 * c.stderr_val);
  McReport d = mc_expectation(EnsembleSpec::class_d(2, 0.5), tr, 20000, 6);
  CHECK(std::abs(d.estimate.real() - 2.0 * 0.5 * 2 * (2 - 0.5)) <
        3.0 * d.stderr_val);
}

}  // TEST_SUITE
