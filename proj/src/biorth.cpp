#include "rmt/biorth.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rmt/detkit.hpp"
#include "rmt/quadrature.hpp"
#include "rmt/specfun.hpp"

namespace rmt {

InitialConfig::InitialConfig(std::vector<double> pts) : points(std::move(pts)) {
  std::sort(points.begin(), points.end());
}

InitialConfig InitialConfig::dirac_origin(int n) {
  InitialConfig c;
  c.points.assign(n, 0.0);
  return c;
}

bool InitialConfig::all_distinct() const {
  for (size_t i = 1; i < points.size(); ++i)
    if (points[i] == points[i - 1]) return false;
  return true;
}

bool InitialConfig::pure_origin() const {
  for (double p : points)
    if (p != 0.0) return false;
  return true;
}

namespace {

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

struct AtomGroup {
  std::vector<double> value;
  std::vector<int> mult;
};

// distinct atoms among the first m points (points are sorted)
AtomGroup truncate_atoms(const InitialConfig& xi, int m) {
  AtomGroup g;
  for (int i = 0; i < m; ++i) {
    if (!g.value.empty() && xi.points[i] == g.value.back())
      ++g.mult.back();
    else {
      g.value.push_back(xi.points[i]);
      g.mult.push_back(1);
    }
  }
  return g;
}

bool truncation_is_origin(const InitialConfig& xi, int m) {
  for (int i = 0; i < m; ++i)
    if (xi.points[i] != 0.0) return false;
  return true;
}

// Derivatives G^(0..ord) at s = value[self] of
//   G(s) = prod_{i != self} (s - value[i])^{-mult[i]},
// via the logarithmic-derivative recursion G^{(i+1)} = sum C(i,j) L^(j) G^(i-j).
std::vector<double> rational_derivatives(const AtomGroup& g, int self,
                                         int ord) {
  double s = g.value[self];
  std::vector<double> out(ord + 1);
  double g0 = 1.0;
  for (size_t i = 0; i < g.value.size(); ++i)
    if (static_cast<int>(i) != self)
      g0 *= std::pow(s - g.value[i], -g.mult[i]);
  out[0] = g0;
  if (ord == 0) return out;
  std::vector<double> logd(ord);  // L^(j), j = 0..ord-1
  for (int j = 0; j < ord; ++j) {
    double sum = 0.0, fact = (j % 2 == 0) ? 1.0 : -1.0;
    for (int i = 1; i <= j; ++i) fact *= i;  // (-1)^j j!
    for (size_t i = 0; i < g.value.size(); ++i)
      if (static_cast<int>(i) != self)
        sum += -g.mult[i] * fact / std::pow(s - g.value[i], j + 1);
    logd[j] = sum;
  }
  for (int i = 0; i < ord; ++i) {
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) acc += binom(i, j) * logd[j] * out[i - j];
    out[i + 1] = acc;
  }
  return out;
}

void check_phi_args(int n, double t, const InitialConfig& xi) {
  if (t <= 0.0) throw std::invalid_argument("phi: t must be > 0");
  if (n < 0 || n >= xi.size())
    throw std::invalid_argument("phi: order n out of range");
}

double factorial(int n) { return std::exp(log_gamma(n + 1)); }

}  // namespace

double phi_plus(int n, double t, double x, const InitialConfig& xi) {
  check_phi_args(n, t, xi);
  if (truncation_is_origin(xi, n + 1)) {
    return std::pow(t, -0.5 * (n + 1)) * std::pow(2.0, -0.5 * n) /
           (factorial(n) * std::sqrt(2.0 * M_PI)) *
           hermite(n, x / std::sqrt(2.0 * t)) * std::exp(-x * x / (2.0 * t));
  }
  return phi_plus_residue(n, t, x, xi);
}

double phi_plus_residue(int n, double t, double x, const InitialConfig& xi) {
  check_phi_args(n, t, xi);
  AtomGroup g = truncate_atoms(xi, n + 1);
  double total = 0.0;
  for (size_t self = 0; self < g.value.size(); ++self) {
    int m = g.mult[self];
    double a = g.value[self];
    // d^k/ds^k p(t,x|s) at s=a
    std::vector<double> pd(m);
    double gauss = std::exp(-(x - a) * (x - a) / (2.0 * t)) /
                   std::sqrt(2.0 * M_PI * t);
    for (int k = 0; k < m; ++k)
      pd[k] = std::pow(2.0 * t, -0.5 * k) *
              hermite(k, (x - a) / std::sqrt(2.0 * t)) * gauss;
    std::vector<double> gd =
        rational_derivatives(g, static_cast<int>(self), m - 1);
    double f = 0.0;
    for (int k = 0; k < m; ++k) f += binom(m - 1, k) * pd[k] * gd[m - 1 - k];
    total += f / factorial(m - 1);
  }
  return total;
}

double phi_nu_plus(int n, double nu, double t, double x,
                   const InitialConfig& xi) {
  check_phi_args(n, t, xi);
  if (nu <= -1.0) throw std::invalid_argument("phi_nu_plus: nu must be > -1");
  if (x < 0.0) throw std::invalid_argument("phi_nu_plus: x must be >= 0");
  if (truncation_is_origin(xi, n + 1)) {
    double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return std::pow(t, -(n + 1.0)) * sign *
           std::pow(2.0, -(n + nu + 1.0)) *
           std::exp(-log_gamma(n + nu + 1.0)) * std::pow(x / t, nu) *
           std::exp(-x / (2.0 * t)) * laguerre(n, nu, x / (2.0 * t));
  }
  return phi_nu_plus_residue(n, nu, t, x, xi);
}

double phi_nu_plus_residue(int n, double nu, double t, double x,
                           const InitialConfig& xi) {
  check_phi_args(n, t, xi);
  if (nu <= -1.0)
    throw std::invalid_argument("phi_nu_plus_residue: nu must be > -1");
  if (x < 0.0)
    throw std::invalid_argument("phi_nu_plus_residue: x must be >= 0");
  AtomGroup g = truncate_atoms(xi, n + 1);
  double pref = std::pow(2.0 * t, -(nu + 1.0)) * std::pow(x, nu);
  double total = 0.0;
  for (size_t self = 0; self < g.value.size(); ++self) {
    int m = g.mult[self];
    double a = g.value[self];
    // d^k/ds^k p_nu(t,x|s) at s=a, by Leibniz over e^{-s/2t} * g_nu(s x/t^2)
    std::vector<double> pd(m);
    double expf = pref * std::exp(-(x + a) / (2.0 * t));
    double w4 = a * x / (4.0 * t * t);
    for (int k = 0; k < m; ++k) {
      double acc = 0.0;
      for (int j = 0; j <= k; ++j)
        acc += binom(k, j) * std::pow(-1.0 / (2.0 * t), k - j) *
               std::pow(x / (4.0 * t * t), j) * hyp0f1_reg(nu + 1.0 + j, w4);
      pd[k] = expf * acc;
    }
    std::vector<double> gd =
        rational_derivatives(g, static_cast<int>(self), m - 1);
    double f = 0.0;
    for (int k = 0; k < m; ++k) f += binom(m - 1, k) * pd[k] * gd[m - 1 - k];
    total += f / factorial(m - 1);
  }
  return total;
}

namespace {

// coefficients (ascending in z) of prod_{j<n} (z + (x - a_j))
std::vector<double> shifted_root_coeffs(int n, double x,
                                        const InitialConfig& xi) {
  std::vector<double> c(n + 1, 0.0);
  c[0] = 1.0;
  for (int j = 0; j < n; ++j) {
    double r = x - xi.points[j];
    for (int k = j + 1; k >= 1; --k) c[k] = c[k - 1] + r * c[k];
    c[0] *= r;
  }
  return c;
}

}  // namespace

double phi_minus(int n, double t, double x, const InitialConfig& xi) {
  if (t <= 0.0) throw std::invalid_argument("phi_minus: t must be > 0");
  if (n < 0 || n > xi.size())
    throw std::invalid_argument("phi_minus: order n out of range");
  // E_Z prod_j (x - a_j + i sqrt(t) Z): odd Gaussian moments vanish,
  // E[(i sqrt(t) Z)^{2m}] = (-t)^m (2m-1)!!
  std::vector<double> c = shifted_root_coeffs(n, x, xi);
  double total = 0.0, moment = 1.0;
  for (int m = 0; 2 * m <= n; ++m) {
    if (m > 0) moment *= -t * (2 * m - 1);
    total += c[2 * m] * moment;
  }
  return total;
}

namespace {

double minus_quadrature(int n, double nu, double t, double x,
                        const InitialConfig& xi) {
  auto f = [&](double r) {
    double poly = 1.0;
    for (int j = 0; j < n; ++j) poly *= -r - xi.points[j];
    return besq_kernel(nu, -t, -r, x) * poly;
  };
  // integrand ~ r^nu near 0: grade whenever that is not smooth
  return integrate_halfline(f, 2.0 * t, std::floor(nu) != nu, 16, 32);
}

double phi_nu_minus_closed(int n, double nu, double t, double x) {
  return std::pow(-2.0 * t, n) * factorial(n) *
         laguerre(n, nu, x / (2.0 * t));
}

void check_minus_args(int n, double nu, double t, double x,
                      const InitialConfig& xi) {
  if (t <= 0.0) throw std::invalid_argument("phi_nu_minus: t must be > 0");
  if (nu <= -1.0) throw std::invalid_argument("phi_nu_minus: nu must be > -1");
  if (x < 0.0) throw std::invalid_argument("phi_nu_minus: x must be >= 0");
  if (n < 0 || n > xi.size())
    throw std::invalid_argument("phi_nu_minus: order n out of range");
}

}  // namespace

std::vector<double> phi_nu_minus_poly(int n, double nu, double t,
                                      const InitialConfig& xi) {
  check_minus_args(n, nu, t, 0.0, xi);
  std::vector<double> node(n + 1), val(n + 1);
  bool origin = truncation_is_origin(xi, n);
  for (int p = 0; p <= n; ++p) {
    node[p] = 2.0 * t * p;
    val[p] = origin ? phi_nu_minus_closed(n, nu, t, node[p])
                    : minus_quadrature(n, nu, t, node[p], xi);
  }
  // Newton divided differences, then expansion to monomial coefficients
  std::vector<double> dd = val;
  for (int j = 1; j <= n; ++j)
    for (int i = n; i >= j; --i)
      dd[i] = (dd[i] - dd[i - 1]) / (node[i] - node[i - j]);
  std::vector<double> coef(n + 1, 0.0);
  coef[0] = dd[n];
  int deg = 0;
  for (int k = n - 1; k >= 0; --k) {
    for (int d = deg; d >= 0; --d) {
      coef[d + 1] += coef[d];
      coef[d] *= -node[k];
    }
    ++deg;
    coef[0] += dd[k];
  }
  double scale = std::max(1.0, std::abs(coef[0]));
  if (std::abs(coef[n] - 1.0) > 1e-7 * scale)
    throw std::runtime_error(
        "phi_nu_minus: quadrature did not converge to a monic polynomial");
  coef[n] = 1.0;
  return coef;
}

double phi_nu_minus(int n, double nu, double t, double x,
                    const InitialConfig& xi) {
  check_minus_args(n, nu, t, x, xi);
  if (n == 0) return 1.0;  // the density over R_- integrates to one
  if (truncation_is_origin(xi, n)) return phi_nu_minus_closed(n, nu, t, x);
  std::vector<double> coef = phi_nu_minus_poly(n, nu, t, xi);
  double predicted = 0.0;
  for (int k = n; k >= 0; --k) predicted = predicted * x + coef[k];
  // the function is a monic polynomial, so interpolation through the
  // well-resolved nodes is exact; the direct quadrature oscillates faster
  // as x grows, so use it as a cross-check only near the node span
  if (x <= 2.0 * t * (n + 1) + xi.points.back()) {
    double direct = minus_quadrature(n, nu, t, x, xi);
    double scale = std::max({1.0, std::abs(direct), std::abs(predicted)});
    if (std::abs(direct - predicted) > 1e-7 * scale)
      throw std::runtime_error(
          "phi_nu_minus: quadrature disagrees with the interpolated "
          "polynomial");
  }
  return predicted;
}

double h_plus_det(Family family, double nu, double t,
                  const std::vector<double>& y, const InitialConfig& xi) {
  int n = xi.size();
  if (static_cast<int>(y.size()) != n)
    throw std::invalid_argument("h_plus_det: size mismatch");
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      m(j, k) = (family == Family::bm) ? phi_plus(j, t, y[k], xi)
                                       : phi_nu_plus(j, nu, t, y[k], xi);
  return m.partialPivLu().determinant();
}

double h_minus_det(const std::vector<double>& y) {
  return vandermonde_product(y);
}

double ext_hermite_kernel(int N, double T, double x, double y) {
  if (N < 1 || T <= 0.0)
    throw std::invalid_argument("ext_hermite_kernel: need N >= 1, T > 0");
  double r = std::sqrt(2.0 * T);
  double cd = christoffel_darboux({PolyFamily::Hermite, 0.0}, N, x / r, y / r);
  return std::exp(-x * x / (2.0 * T)) / std::sqrt(2.0 * M_PI * T) * cd;
}

double ext_laguerre_kernel(int N, double nu, double T, double x, double y) {
  if (N < 1 || T <= 0.0 || nu <= -1.0)
    throw std::invalid_argument(
        "ext_laguerre_kernel: need N >= 1, T > 0, nu > -1");
  if (x < 0.0 || y < 0.0)
    throw std::invalid_argument("ext_laguerre_kernel: x, y must be >= 0");
  double cd = christoffel_darboux({PolyFamily::Laguerre, nu}, N,
                                  x / (2.0 * T), y / (2.0 * T));
  return std::pow(x, nu) * std::exp(-x / (2.0 * T)) /
         std::pow(2.0 * T, nu + 1.0) * cd;
}

double corr_kernel(const KernelQuery& q) {
  if (q.s <= 0.0 || q.t <= 0.0)
    throw std::invalid_argument("corr_kernel: times must be > 0");
  if (q.init.size() < 1)
    throw std::invalid_argument("corr_kernel: empty initial configuration");
  if (!q.init.pure_origin() && !q.init.all_distinct())
    throw std::invalid_argument(
        "corr_kernel: initial configuration must have distinct atoms or be "
        "concentrated at the origin");
  int n_part = q.init.size();
  double sum = 0.0;
  if (q.family == Family::bm) {
    for (int n = 0; n < n_part; ++n)
      sum += phi_plus(n, q.s, q.x, q.init) * phi_minus(n, q.t, q.y, q.init);
    if (q.s > q.t) sum -= std::real(bm_kernel(q.s - q.t, q.x, q.y));
  } else {
    if (q.x < 0.0 || q.y < 0.0)
      throw std::invalid_argument("corr_kernel: positions must be >= 0");
    for (int n = 0; n < n_part; ++n)
      sum += phi_nu_plus(n, q.nu, q.s, q.x, q.init) *
             phi_nu_minus(n, q.nu, q.t, q.y, q.init);
    if (q.s > q.t) sum -= besq_kernel(q.nu, q.s - q.t, q.x, q.y);
  }
  return sum;
}

namespace {

void check_blocks(const std::vector<double>& times,
                  const std::vector<std::vector<double>>& points) {
  if (times.size() != points.size())
    throw std::invalid_argument("blocks: times/points size mismatch");
  if (times.empty()) throw std::invalid_argument("blocks: empty input");
  for (size_t m = 0; m < times.size(); ++m) {
    if (times[m] <= 0.0)
      throw std::invalid_argument("blocks: times must be > 0");
    if (m > 0 && times[m] <= times[m - 1])
      throw std::invalid_argument("blocks: times must be strictly increasing");
  }
}

}  // namespace

double corr_fn(Family family, double nu, const std::vector<double>& times,
               const std::vector<std::vector<double>>& points,
               const InitialConfig& xi) {
  check_blocks(times, points);
  std::vector<std::pair<double, double>> q;  // (time, position)
  for (size_t m = 0; m < times.size(); ++m)
    for (double x : points[m]) q.emplace_back(times[m], x);
  int total = static_cast<int>(q.size());
  Eigen::MatrixXd mat(total, total);
  for (int a = 0; a < total; ++a)
    for (int b = 0; b < total; ++b)
      mat(a, b) = corr_kernel(
          {family, nu, xi, q[a].first, q[a].second, q[b].first, q[b].second});
  return mat.partialPivLu().determinant();
}

double multitime_pdf(Family family, double nu, const std::vector<double>& times,
                     const std::vector<std::vector<double>>& configs,
                     const InitialConfig& xi) {
  check_blocks(times, configs);
  int n = xi.size();
  for (const auto& cfg : configs) {
    if (static_cast<int>(cfg.size()) != n)
      throw std::invalid_argument("multitime_pdf: configuration size mismatch");
    if (family == Family::besq)
      for (double v : cfg)
        if (v < 0.0)
          throw std::invalid_argument("multitime_pdf: negative position");
  }
  double value = h_minus_det(configs.back());
  for (size_t m = 0; m + 1 < times.size(); ++m) {
    double dt = times[m + 1] - times[m];
    value *= (family == Family::bm)
                 ? km_det_bm(dt, configs[m + 1], configs[m])
                 : km_det_besq(nu, dt, configs[m + 1], configs[m]);
  }
  return value * h_plus_det(family, nu, times[0], configs[0], xi);
}

}  // namespace rmt
