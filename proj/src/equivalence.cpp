#include "rmt/equivalence.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace rmt {

namespace {

EnsembleSpec initial_law(Family family, int N, double nu, double sigma2) {
  return (family == Family::bm) ? EnsembleSpec::gue(N, sigma2)
                                : EnsembleSpec::chgue(N, nu, sigma2);
}

void check_common(Family family, int N, double nu, double sigma2, double t) {
  if (N < 1) throw std::invalid_argument("verify: N must be >= 1");
  if (sigma2 <= 0.0 || t <= 0.0)
    throw std::invalid_argument("verify: sigma2 and t must be > 0");
  if (family == Family::besq && nu <= -1.0)
    throw std::invalid_argument("verify: nu must be > -1");
}

// phi_n^(-)(t, .; xi) for all n < N at once: exact Gaussian moments for
// BM, one interpolated polynomial per order for BESQ, so a whole grid
// costs N quadratures per sample instead of one per grid point.
struct MinusEvaluator {
  Family family;
  double nu, t;
  const InitialConfig* xi;
  std::vector<std::vector<double>> coef;  // BESQ: [n] -> monomials

  MinusEvaluator(Family fam, double nu_, double t_, const InitialConfig& xi_,
                 int N)
      : family(fam), nu(nu_), t(t_), xi(&xi_) {
    if (family == Family::besq) {
      coef.resize(N);
      for (int n = 1; n < N; ++n) coef[n] = phi_nu_minus_poly(n, nu, t, xi_);
    }
  }

  double operator()(int n, double x) const {
    if (family == Family::bm) return phi_minus(n, t, x, *xi);
    if (n == 0) return 1.0;
    double v = 0.0;
    for (int k = n; k >= 0; --k) v = v * x + coef[n][k];
    return v;
  }
};

double plus_fn(Family family, int n, double nu, double t, double x,
               const InitialConfig& xi) {
  return (family == Family::bm) ? phi_plus(n, t, x, xi)
                                : phi_nu_plus(n, nu, t, x, xi);
}

double closed_kernel(Family family, int N, double nu, double T, double x,
                     double y) {
  return (family == Family::bm) ? ext_hermite_kernel(N, T, x, y)
                                : ext_laguerre_kernel(N, nu, T, x, y);
}

double backward_kernel(Family family, double nu, double dt, double to,
                       double from) {
  return (family == Family::bm) ? bm_kernel(dt, cplx(to), cplx(from)).real()
                                : besq_kernel(nu, dt, to, from);
}

VerifyReport assemble(std::string op, Family family,
                      std::map<std::string, double> params, long samples,
                      uint64_t seed, const std::vector<double>& labels,
                      const std::vector<McReport>& mcs,
                      const std::vector<double>& closed) {
  VerifyReport rep;
  rep.op = std::move(op);
  rep.family = (family == Family::bm) ? "bm" : "besq";
  rep.params = std::move(params);
  rep.samples = samples;
  rep.seed = seed;
  size_t n = labels.size();
  size_t within2 = 0;
  bool all3 = true;
  for (size_t i = 0; i < n; ++i) {
    VerifyPoint p;
    p.x = labels[i];
    p.estimate = mcs[i].estimate.real();
    p.stderr_val = mcs[i].stderr_val;
    p.closed_form = closed[i];
    double diff = p.estimate - p.closed_form;
    if (p.stderr_val > 0.0)
      p.z = diff / p.stderr_val;
    else
      p.z = (diff == 0.0) ? 0.0 : std::numeric_limits<double>::max();
    p.pass = std::abs(p.z) <= 3.0;
    all3 = all3 && p.pass;
    if (std::abs(p.z) <= 2.0) ++within2;
    rep.points.push_back(p);
  }
  rep.pass = all3 && (20 * within2 >= 19 * n);
  return rep;
}

}  // namespace

VerifyReport verify_onepoint(Family family, int N, double nu, double sigma2,
                             double t, const std::vector<double>& grid,
                             long samples, uint64_t seed, int threads) {
  check_common(family, N, nu, sigma2, t);
  if (grid.empty()) throw std::invalid_argument("verify_onepoint: empty grid");
  for (double x : grid)
    if (family == Family::besq && x < 0.0)
      throw std::invalid_argument("verify_onepoint: BESQ positions are >= 0");

  int width = static_cast<int>(grid.size());
  auto f = [&](const Configuration& cfg, std::vector<cplx>& out) {
    InitialConfig xi(cfg);
    MinusEvaluator minus(family, nu, t, xi, N);
    for (double x : grid) {
      double k = 0.0;
      for (int n = 0; n < N; ++n)
        k += plus_fn(family, n, nu, t, x, xi) * minus(n, x);
      out.push_back(k);
    }
  };
  std::vector<McReport> mcs = mc_expectation_grid(
      initial_law(family, N, nu, sigma2), f, width, samples, seed, threads);

  std::vector<double> closed(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    closed[i] = closed_kernel(family, N, nu, t + sigma2, grid[i], grid[i]);

  return assemble("verify_onepoint", family,
                  {{"N", double(N)},
                   {"nu", nu},
                   {"sigma2", sigma2},
                   {"t", t},
                   {"threads", double(threads)}},
                  samples, seed, grid, mcs, closed);
}

VerifyReport verify_det_block(Family family, int N, double nu, double sigma2,
                              double t, const std::vector<double>& block,
                              long samples, uint64_t seed, int threads) {
  check_common(family, N, nu, sigma2, t);
  int L = static_cast<int>(block.size());
  if (L < 1 || L > N)
    throw std::invalid_argument("verify_det_block: need 1 <= L <= N");
  for (int j = 0; j < L; ++j) {
    if (family == Family::besq && block[j] < 0.0)
      throw std::invalid_argument("verify_det_block: BESQ positions are >= 0");
    for (int k = j + 1; k < L; ++k)
      if (block[j] == block[k])
        throw std::invalid_argument("verify_det_block: points must be distinct");
  }

  auto f = [&](const Configuration& cfg, std::vector<cplx>& out) {
    InitialConfig xi(cfg);
    MinusEvaluator minus(family, nu, t, xi, N);
    Eigen::MatrixXd plus(N, L), mins(N, L);
    for (int n = 0; n < N; ++n)
      for (int k = 0; k < L; ++k) {
        plus(n, k) = plus_fn(family, n, nu, t, block[k], xi);
        mins(n, k) = minus(n, block[k]);
      }
    Eigen::MatrixXd a = plus.transpose() * mins;  // a(j,k) = K(x_j, x_k)
    out.push_back(a.partialPivLu().determinant());
  };
  std::vector<McReport> mcs = mc_expectation_grid(
      initial_law(family, N, nu, sigma2), f, 1, samples, seed, threads);

  Eigen::MatrixXd closed_m(L, L);
  for (int j = 0; j < L; ++j)
    for (int k = 0; k < L; ++k)
      closed_m(j, k) =
          closed_kernel(family, N, nu, t + sigma2, block[j], block[k]);
  std::vector<double> closed{closed_m.partialPivLu().determinant()};

  return assemble("verify_det_block", family,
                  {{"N", double(N)},
                   {"nu", nu},
                   {"sigma2", sigma2},
                   {"t", t},
                   {"L", double(L)},
                   {"threads", double(threads)}},
                  samples, seed, {block[0]}, mcs, closed);
}

VerifyReport verify_density_shift(Family family, int N, double nu,
                                  double sigma2, double t,
                                  const std::vector<Configuration>& tests,
                                  long samples, uint64_t seed, int threads) {
  check_common(family, N, nu, sigma2, t);
  if (tests.empty())
    throw std::invalid_argument("verify_density_shift: no test configurations");
  for (const Configuration& y : tests) {
    if (static_cast<int>(y.size()) != N)
      throw std::invalid_argument("verify_density_shift: test size != N");
    for (int j = 0; j < N; ++j) {
      if (j > 0 && y[j] <= y[j - 1])
        throw std::invalid_argument(
            "verify_density_shift: test configurations must be increasing");
      if (family == Family::besq && y[j] < 0.0)
        throw std::invalid_argument("verify_density_shift: BESQ positions >= 0");
    }
  }

  int width = static_cast<int>(tests.size());
  std::vector<double> times{t};
  auto f = [&](const Configuration& cfg, std::vector<cplx>& out) {
    InitialConfig xi(cfg);
    for (const Configuration& y : tests)
      out.push_back(multitime_pdf(family, nu, times, {y}, xi));
  };
  std::vector<McReport> mcs = mc_expectation_grid(
      initial_law(family, N, nu, sigma2), f, width, samples, seed, threads);

  InitialConfig origin = InitialConfig::dirac_origin(N);
  double T = t + sigma2;
  std::vector<double> closed(tests.size()), labels(tests.size());
  for (size_t i = 0; i < tests.size(); ++i) {
    labels[i] = static_cast<double>(i);
    closed[i] = multitime_pdf(family, nu, {T}, {tests[i]}, origin);
    double dens = (family == Family::bm) ? gue_pdf(N, T, tests[i])
                                         : chgue_pdf(N, nu, T, tests[i]);
    if (std::abs(closed[i] - dens) > 1e-8 * std::max(1.0, std::abs(dens)))
      throw std::logic_error(
          "verify_density_shift: origin-started density disagrees with the "
          "ensemble eigenvalue density");
  }

  return assemble("verify_density_shift", family,
                  {{"N", double(N)},
                   {"nu", nu},
                   {"sigma2", sigma2},
                   {"t", t},
                   {"threads", double(threads)}},
                  samples, seed, labels, mcs, closed);
}

VerifyReport verify_multitime(Family family, int N, double nu, double sigma2,
                              double t1, double t2,
                              const std::vector<std::pair<double, double>>& pairs,
                              long samples, uint64_t seed, int threads) {
  check_common(family, N, nu, sigma2, t1);
  if (!(t1 < t2))
    throw std::invalid_argument("verify_multitime: need 0 < t1 < t2");
  if (pairs.empty())
    throw std::invalid_argument("verify_multitime: no probe pairs");
  for (const auto& [x1, x2] : pairs)
    if (family == Family::besq && (x1 < 0.0 || x2 < 0.0))
      throw std::invalid_argument("verify_multitime: BESQ positions are >= 0");

  int width = static_cast<int>(pairs.size());
  auto f = [&](const Configuration& cfg, std::vector<cplx>& out) {
    InitialConfig xi(cfg);
    MinusEvaluator minus1(family, nu, t1, xi, N);
    MinusEvaluator minus2(family, nu, t2, xi, N);
    for (const auto& [x1, x2] : pairs) {
      double k11 = 0.0, k12 = 0.0, k21 = 0.0, k22 = 0.0;
      for (int n = 0; n < N; ++n) {
        double p1 = plus_fn(family, n, nu, t1, x1, xi);
        double p2 = plus_fn(family, n, nu, t2, x2, xi);
        double m1 = minus1(n, x1);
        double m2 = minus2(n, x2);
        k11 += p1 * m1;
        k12 += p1 * m2;
        k21 += p2 * m1;
        k22 += p2 * m2;
      }
      k21 -= backward_kernel(family, nu, t2 - t1, x2, x1);
      out.push_back(k11 * k22 - k12 * k21);
    }
  };
  std::vector<McReport> mcs = mc_expectation_grid(
      initial_law(family, N, nu, sigma2), f, width, samples, seed, threads);

  InitialConfig origin = InitialConfig::dirac_origin(N);
  std::vector<double> closed(pairs.size()), labels(pairs.size());
  for (size_t i = 0; i < pairs.size(); ++i) {
    auto [x1, x2] = pairs[i];
    labels[i] = static_cast<double>(i);
    closed[i] = corr_fn(family, nu, {t1 + sigma2, t2 + sigma2}, {{x1}, {x2}},
                        origin);
  }

  return assemble("verify_multitime", family,
                  {{"N", double(N)},
                   {"nu", nu},
                   {"sigma2", sigma2},
                   {"t1", t1},
                   {"t2", t2},
                   {"threads", double(threads)}},
                  samples, seed, labels, mcs, closed);
}

namespace {

std::string fmt(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T, class F>
void append_array(std::string& s, const char* key,
                  const std::vector<T>& items, F field) {
  s += '"';
  s += key;
  s += "\":[";
  for (size_t i = 0; i < items.size(); ++i) {
    if (i) s += ',';
    s += field(items[i]);
  }
  s += ']';
}

}  // namespace

std::string to_json(const VerifyReport& rep) {
  std::string s = "{\"op\":\"" + rep.op + "\",\"family\":\"" + rep.family +
                  "\",\"params\":{";
  bool first = true;
  for (const auto& [k, v] : rep.params) {
    if (!first) s += ',';
    first = false;
    s += '"' + k + "\":" + fmt(v);
  }
  s += "},\"samples\":" + std::to_string(rep.samples) +
       ",\"seed\":" + std::to_string(rep.seed) + ',';
  const auto& p = rep.points;
  append_array(s, "grid", p, [](const VerifyPoint& q) { return fmt(q.x); });
  s += ',';
  append_array(s, "estimates", p,
               [](const VerifyPoint& q) { return fmt(q.estimate); });
  s += ',';
  append_array(s, "closed_form", p,
               [](const VerifyPoint& q) { return fmt(q.closed_form); });
  s += ',';
  append_array(s, "stderr", p,
               [](const VerifyPoint& q) { return fmt(q.stderr_val); });
  s += ',';
  append_array(s, "z", p, [](const VerifyPoint& q) { return fmt(q.z); });
  s += ',';
  append_array(s, "point_pass", p, [](const VerifyPoint& q) {
    return std::string(q.pass ? "true" : "false");
  });
  s += ",\"pass\":";
  s += rep.pass ? "true" : "false";
  s += '}';
  return s;
}

}  // namespace rmt
