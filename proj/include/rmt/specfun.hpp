#pragma once
#include <complex>
#include <stdexcept>

// Special functions and orthogonal polynomials: Hermite and Laguerre
// (plain and monic-rescaled), Bessel I and J by power series, log-gamma,
// and Christoffel-Darboux sums. All functions are pure and thread-safe.

namespace rmt {

using cplx = std::complex<double>;

// Series truncation rule used by every power series in the library:
// stop once |term| < series_rel_eps * |partial sum|, with a hard cap.
inline constexpr double series_rel_eps = 1e-16;
inline constexpr int series_max_terms = 500;

// Hermite polynomial H_n(x), physicists' convention,
// via H_{n+1} = 2x H_n - 2n H_{n-1}.
cplx hermite(int n, cplx x);
double hermite(int n, double x);

// Generalized Laguerre polynomial L_n^nu(x), nu > -1,
// via (n+1) L_{n+1} = (2n+nu+1-x) L_n - (n+nu) L_{n-1}.
cplx laguerre(int n, double nu, cplx x);
double laguerre(int n, double nu, double x);

// Monic rescalings: leading coefficient exactly 1.
//   monic_hermite(l, a, s2)      = (s2/2)^(l/2) H_l(a/sqrt(2 s2))
//   monic_laguerre(l, nu, a, s2) = (-2 s2)^l l! L_l^nu(a/(2 s2))
cplx monic_hermite(int l, cplx alpha, double sigma2);
cplx monic_laguerre(int l, double nu, cplx alpha, double sigma2);

// Regularized confluent hypergeometric limit function
//   hyp0f1_reg(b, w) = sum_k w^k / (k! Gamma(k+b)),
// entire in w; the series core shared by bessel_i, bessel_j and the
// squared-Bessel transition density. d/dw hyp0f1_reg(b,w) = hyp0f1_reg(b+1,w).
double hyp0f1_reg(double b, double w);
cplx hyp0f1_reg(double b, cplx w);

// Modified Bessel function I_nu(z) by power series, nu > -1; z^nu on the
// principal branch. Intended for the positive-real and purely-imaginary rays.
cplx bessel_i(double nu, cplx z);

// Bessel function J_nu(x) by power series, nu > -1, x >= 0.
double bessel_j(double nu, double x);

// ln Gamma(x), x > 0; Lanczos approximation, absolute error < 1e-12.
double log_gamma(double x);

// Which orthogonal polynomial family a Christoffel-Darboux sum runs over.
struct PolyFamily {
  enum Kind { Hermite, Laguerre } kind = Hermite;
  double nu = 0.0;  // Laguerre index; ignored for Hermite
};

// Christoffel-Darboux sum
//   Hermite:  sum_{n<N} H_n(x) H_n(y) / (2^n n!)
//   Laguerre: sum_{n<N} n!/Gamma(n+nu+1) L_n^nu(x) L_n^nu(y)
// computed both directly and by the two-polynomial ratio form; the paths
// must agree to 1e-10 relative (x != y) and the direct sum is returned.
double christoffel_darboux(const PolyFamily& family, int N, double x, double y);

}  // namespace rmt
