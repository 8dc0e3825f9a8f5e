#include "rmt/densities.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "rmt/specfun.hpp"

namespace rmt {

cplx bm_kernel(double t, cplx y, cplx x) {
  if (t == 0.0) throw delta_measure_error("bm_kernel: t=0 is a point mass");
  cplx d = x - y;
  return std::exp(-d * d / (2.0 * t)) / std::sqrt(2.0 * M_PI * std::abs(t));
}

double besq_kernel(double nu, double t, double y, double x) {
  if (nu <= -1.0) throw std::invalid_argument("besq_kernel: nu must be > -1");
  if (t == 0.0) throw delta_measure_error("besq_kernel: t=0 is a point mass");
  if (t > 0.0) {
    if (x < 0.0 || y < 0.0)
      throw std::invalid_argument(
          "besq_kernel: positive time needs nonnegative endpoints");
  } else {
    if (x > 0.0 && y > 0.0)
      throw std::invalid_argument(
          "besq_kernel: negative time needs a nonpositive endpoint");
    if (x < 0.0 && y < 0.0)
      throw std::invalid_argument(
          "besq_kernel: negative time supports one nonpositive endpoint");
  }
  double at = std::abs(t);
  double g = hyp0f1_reg(nu + 1.0, 0.25 * x * y / (t * t));
  return std::pow(2.0 * at, -(nu + 1.0)) * std::pow(std::abs(y), nu) *
         std::exp(-(x + y) / (2.0 * t)) * g;
}

namespace {

void check_km_args(const std::vector<double>& y, const std::vector<double>& x) {
  if (y.size() != x.size())
    throw std::invalid_argument("km_det: configuration sizes differ");
  for (const auto* cfg : {&y, &x})
    for (size_t j = 0; j < cfg->size(); ++j)
      for (size_t k = j + 1; k < cfg->size(); ++k)
        if ((*cfg)[j] == (*cfg)[k])
          throw std::invalid_argument("km_det: points must be distinct");
}

}  // namespace

double km_det_bm(double t, const std::vector<double>& y,
                 const std::vector<double>& x) {
  if (t <= 0.0) throw std::invalid_argument("km_det_bm: t must be > 0");
  check_km_args(y, x);
  int n = static_cast<int>(y.size());
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = std::real(bm_kernel(t, y[j], x[k]));
  return m.partialPivLu().determinant();
}

double km_det_besq(double nu, double t, const std::vector<double>& y,
                   const std::vector<double>& x) {
  if (t <= 0.0) throw std::invalid_argument("km_det_besq: t must be > 0");
  check_km_args(y, x);
  int n = static_cast<int>(y.size());
  Eigen::MatrixXd m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) m(j, k) = besq_kernel(nu, t, y[j], x[k]);
  return m.partialPivLu().determinant();
}

}  // namespace rmt
