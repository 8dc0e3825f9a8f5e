#include "rmt/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace rmt {

namespace {

GaussRule compute_rule(int m) {
  // Newton iteration on P_m; nodes symmetric about 0
  GaussRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.nodes[m - 1 - i] = x;
    r.weights[m - 1 - i] = w;
  }
  return r;
}

std::mutex rule_mutex;
std::map<int, GaussRule> rule_cache;

}  // namespace

const GaussRule& gauss_legendre(int m) {
  if (m < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  std::lock_guard<std::mutex> lock(rule_mutex);
  auto it = rule_cache.find(m);
  if (it == rule_cache.end()) it = rule_cache.emplace(m, compute_rule(m)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int order) {
  const GaussRule rule = gauss_legendre(order);
  double total = 0.0;
  double w = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * w;
    double mid = lo + 0.5 * w, half = 0.5 * w;
    double s = 0.0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      s += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += s * half;
  }
  return total;
}

namespace {

// Doubling search for the point beyond which |f| stays under
// 1e-14 times the observed peak.
double truncation_point(const std::function<double(double)>& f, double lo,
                        double scale) {
  double peak = 0.0;
  double hi = lo + 8.0 * scale;
  // skip the lower endpoint: integrands may carry an integrable singularity
  // there, and an infinite (or huge) sample would disable the tail search
  for (int i = 1; i <= 32; ++i) {
    double v = std::abs(f(lo + (hi - lo) * i / 32.0));
    if (std::isfinite(v)) peak = std::max(peak, v);
  }
  if (peak == 0.0) return hi;
  while (std::abs(f(hi)) > 1e-14 * peak && hi - lo < 1e6 * scale)
    hi = lo + (hi - lo) * 1.5;
  return hi;
}

}  // namespace

double integrate_halfline(const std::function<double(double)>& f,
                          double decay_scale, bool grade_towards_zero,
                          int panels, int order) {
  if (decay_scale <= 0.0)
    throw std::invalid_argument("integrate_halfline: decay_scale must be > 0");
  double L = truncation_point(f, 0.0, decay_scale);
  if (!grade_towards_zero) return integrate(f, 0.0, L, panels, order);
  // geometric panels accumulating at 0 for integrable endpoint singularities;
  // the unresolved sliver [0, L*1e-16] contributes O(sqrt) of its width
  double ratio = std::pow(1e-16, 1.0 / panels);
  double total = 0.0;
  double hi = L;
  for (int p = 0; p < panels; ++p) {
    double lo = (p == panels - 1) ? 0.0 : hi * ratio;
    total += integrate(f, lo, hi, 1, order);
    hi = lo;
  }
  return total;
}

double integrate_line(const std::function<double(double)>& f, double center,
                      double decay_scale, int panels, int order) {
  if (decay_scale <= 0.0)
    throw std::invalid_argument("integrate_line: decay_scale must be > 0");
  double hi = truncation_point(f, center, decay_scale);
  auto mirrored = [&](double x) { return std::abs(f(2.0 * center - x)); };
  double lo = 2.0 * center -
              truncation_point(mirrored, center, decay_scale);
  return integrate(f, lo, hi, panels, order);
}

}  // namespace rmt
