#include "rmt/charpoly.hpp"

#include <cmath>
#include <stdexcept>

#include "rmt/detkit.hpp"
#include "rmt/specfun.hpp"

namespace rmt {

namespace {

void check_distinct(const std::vector<cplx>& alpha) {
  double scale = 1.0;
  for (const cplx& a : alpha) scale = std::max(scale, std::abs(a));
  for (size_t j = 0; j < alpha.size(); ++j)
    for (size_t k = j + 1; k < alpha.size(); ++k)
      if (std::abs(alpha[j] - alpha[k]) < 1e-6 * scale)
        throw std::invalid_argument(
            "charpoly: alpha values must be separated by 1e-6 * scale");
}

void check_shape(int n, const std::vector<cplx>& alpha, int N, double sigma2) {
  if (n < 1 || N < 1 || sigma2 <= 0.0)
    throw std::invalid_argument("charpoly: need n >= 1, N >= 1, sigma2 > 0");
  if (alpha.size() != 2 * static_cast<size_t>(n))
    throw std::invalid_argument("charpoly: alpha must have length 2n");
  check_distinct(alpha);
}

// det of the n x n pair matrix built from monic values at degree
// N+n (hi) and N+n-1 (lo), entries (hi_j lo_k' - hi_k' lo_j)/(a_j - a_k')
// with j over the first half of alpha and k' over the second.
cplx pair_determinant(int n, const std::vector<cplx>& hi,
                      const std::vector<cplx>& lo,
                      const std::vector<cplx>& alpha) {
  ComplexMatrix d(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      d(j, k) = (hi[j] * lo[n + k] - hi[n + k] * lo[j]) /
                (alpha[j] - alpha[n + k]);
  return det(d);
}

cplx half_vandermondes(int n, const std::vector<cplx>& alpha) {
  std::vector<cplx> a(alpha.begin(), alpha.begin() + n);
  std::vector<cplx> b(alpha.begin() + n, alpha.end());
  return vandermonde_product(a) * vandermonde_product(b);
}

}  // namespace

cplx m_gue_pair_form(int n, const std::vector<cplx>& alpha, int N,
                     double sigma2) {
  check_shape(n, alpha, N, sigma2);
  double log_pref = 0.0;
  for (int l = 2; l <= n; ++l)
    log_pref += log_gamma(N + n - l + 1) - log_gamma(N + n) -
                (l - 1) * std::log(sigma2);
  std::vector<cplx> hi(2 * n), lo(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    hi[k] = monic_hermite(N + n, alpha[k], sigma2);
    lo[k] = monic_hermite(N + n - 1, alpha[k], sigma2);
  }
  return std::exp(log_pref) * pair_determinant(n, hi, lo, alpha) /
         half_vandermondes(n, alpha);
}

cplx m_nu_pair_form(int n, const std::vector<cplx>& alpha, int N, double nu,
                    double sigma2) {
  check_shape(n, alpha, N, sigma2);
  if (nu <= -1.0) throw std::invalid_argument("charpoly: nu must be > -1");
  double log_pref = 0.0;
  for (int l = 1; l <= n - 1; ++l)
    log_pref += log_gamma(N + nu + l) + log_gamma(N + l) -
                log_gamma(N + n + nu) - log_gamma(N + n) -
                2.0 * l * std::log(2.0 * sigma2);
  std::vector<cplx> hi(2 * n), lo(2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    hi[k] = monic_laguerre(N + n, nu, alpha[k], sigma2);
    lo[k] = monic_laguerre(N + n - 1, nu, alpha[k], sigma2);
  }
  return std::exp(log_pref) * pair_determinant(n, hi, lo, alpha) /
         half_vandermondes(n, alpha);
}

cplx m_gue_monic_form(int n, const std::vector<cplx>& alpha, int N,
                      double sigma2) {
  check_shape(n, alpha, N, sigma2);
  ComplexMatrix m(2 * n, 2 * n);
  for (int j = 0; j < 2 * n; ++j)
    for (int k = 0; k < 2 * n; ++k)
      m(j, k) = monic_hermite(N + j, alpha[k], sigma2);
  return det(m) / vandermonde_product(alpha);
}

cplx m_nu_monic_form(int n, const std::vector<cplx>& alpha, int N, double nu,
                     double sigma2) {
  check_shape(n, alpha, N, sigma2);
  if (nu <= -1.0) throw std::invalid_argument("charpoly: nu must be > -1");
  ComplexMatrix m(2 * n, 2 * n);
  for (int j = 0; j < 2 * n; ++j)
    for (int k = 0; k < 2 * n; ++k)
      m(j, k) = monic_laguerre(N + j, nu, alpha[k], sigma2);
  return det(m) / vandermonde_product(alpha);
}

cplx m_class(MatrixClass kind, int n, const std::vector<cplx>& alpha, int N,
             double sigma2) {
  if (n < 1 || N < 1 || sigma2 <= 0.0)
    throw std::invalid_argument("charpoly: need n >= 1, N >= 1, sigma2 > 0");
  if (alpha.size() != 2 * static_cast<size_t>(n))
    throw std::invalid_argument("charpoly: alpha must have length 2n");
  std::vector<cplx> sq(alpha.size());
  for (size_t k = 0; k < alpha.size(); ++k) sq[k] = alpha[k] * alpha[k];
  check_distinct(sq);

  double nu = (kind == MatrixClass::c) ? 0.5 : -0.5;
  cplx laguerre_form = m_nu_monic_form(n, sq, N, nu, sigma2);

  cplx hermite_form;
  cplx h_sq = vandermonde_product(sq);
  ComplexMatrix m(2 * n, 2 * n);
  if (kind == MatrixClass::c) {
    cplx prod(1.0, 0.0);
    for (const cplx& a : alpha) {
      if (std::abs(a) < 1e-12)
        throw std::invalid_argument(
            "charpoly: class C odd-polynomial form needs alpha != 0");
      prod *= a;
    }
    for (int j = 0; j < 2 * n; ++j)
      for (int k = 0; k < 2 * n; ++k)
        m(j, k) = monic_hermite(2 * N + 2 * j + 1, alpha[k], sigma2);
    hermite_form = det(m) / (h_sq * prod);
  } else {
    for (int j = 0; j < 2 * n; ++j)
      for (int k = 0; k < 2 * n; ++k)
        m(j, k) = monic_hermite(2 * (N + j), alpha[k], sigma2);
    hermite_form = det(m) / h_sq;
  }

  double scale =
      std::max({std::abs(laguerre_form), std::abs(hermite_form), 1e-300});
  if (std::abs(laguerre_form - hermite_form) > 1e-9 * scale)
    throw std::logic_error("m_class: the two determinantal forms disagree");
  return hermite_form;
}

McReport mc_charpoly(const EnsembleSpec& spec, const std::vector<cplx>& alpha,
                     long samples, uint64_t seed, int threads) {
  if (alpha.empty())
    throw std::invalid_argument("mc_charpoly: alpha must be nonempty");
  bool squared = spec.kind == EnsembleKind::class_c ||
                 spec.kind == EnsembleKind::class_d;
  auto f = [&alpha, squared](const Configuration& cfg) {
    cplx prod(1.0, 0.0);
    for (const cplx& a : alpha) {
      cplx aa = squared ? a * a : a;
      for (double x : cfg) prod *= aa - x;
    }
    return prod;
  };
  return mc_expectation(spec, f, samples, seed, threads);
}

}  // namespace rmt
