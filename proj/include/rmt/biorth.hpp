#pragma once

// The biorthogonal phi-function system attached to an initial particle
// configuration, the extended Hermite/Laguerre kernels, correlation
// kernels and functions for general initial configurations, and the
// multitime transition density built from Karlin-McGregor blocks.
//
//   phi_n^(+)(t,x; xi): contour integral of the transition density
//     against 1/prod_{a in xi_{n+1}}(s-a), evaluated as a residue sum
//     (derivative residues at repeated atoms).
//   phi_n^(-)(t,x; xi): monic degree-n polynomial in x; the BM variant
//     via the exact Gaussian moment identity, the BESQ variant via
//     negative-time quadrature (closed form when xi is concentrated
//     at the origin).
//
// Together they satisfy int phi_m^(+)(t,x) phi_n^(-)(t,x) dx = delta_mn,
// which makes sum_n phi_n^(+) phi_n^(-) a correlation kernel.

#include <vector>

#include "rmt/densities.hpp"

namespace rmt {

// Initial configuration: sorted points, repetitions allowed.  The n-th
// truncation consists of the first n points; atoms compare by exact
// equality, so repeated atoms must be bitwise equal.
struct InitialConfig {
  std::vector<double> points;  // sorted ascending

  InitialConfig() = default;
  explicit InitialConfig(std::vector<double> pts);
  static InitialConfig dirac_origin(int n);

  int size() const { return static_cast<int>(points.size()); }
  bool all_distinct() const;
  bool pure_origin() const;
};

double phi_plus(int n, double t, double x, const InitialConfig& xi);
double phi_minus(int n, double t, double x, const InitialConfig& xi);
double phi_nu_plus(int n, double nu, double t, double x,
                   const InitialConfig& xi);

// Contour-integral evaluation by residues at the (possibly repeated) atoms
// of the truncated configuration.  phi_plus / phi_nu_plus delegate here
// except at pure-origin truncations, where they use closed forms; these
// entry points stay on the residue route for any atom multiset so the two
// routes can be compared.
double phi_plus_residue(int n, double t, double x, const InitialConfig& xi);
double phi_nu_plus_residue(int n, double nu, double t, double x,
                           const InitialConfig& xi);
double phi_nu_minus(int n, double nu, double t, double x,
                    const InitialConfig& xi);

// Monomial coefficients (ascending, coef[n] == 1) of the monic
// polynomial x -> phi_n^(nu,-)(t, x; xi), recovered by interpolating
// the quadrature at n+1 probe points.  Lets callers evaluate the minus
// function on a whole grid for the price of n+1 quadratures.
std::vector<double> phi_nu_minus_poly(int n, double nu, double t,
                                      const InitialConfig& xi);

// det_{1<=j,k<=N}[phi_{j-1}^(+)(t, y_k; xi)]; N = xi.size() = y.size().
double h_plus_det(Family family, double nu, double t,
                  const std::vector<double>& y, const InitialConfig& xi);
// h^(-) is t- and xi-independent and equals the Vandermonde product of y.
double h_minus_det(const std::vector<double>& y);

// Equal-time correlation kernels of the processes started from the
// origin configuration, at total time T:
//   ext_hermite_kernel  = e^{-x^2/2T}/sqrt(2 pi T)
//                         * sum_{n<N} H_n(x/sqrt(2T)) H_n(y/sqrt(2T)) / (2^n n!)
//   ext_laguerre_kernel = x^nu e^{-x/2T}/(2T)^{nu+1}
//                         * sum_{n<N} n!/Gamma(n+nu+1) L_n(x/2T) L_n(y/2T)
double ext_hermite_kernel(int N, double T, double x, double y);
double ext_laguerre_kernel(int N, double nu, double T, double x, double y);

struct KernelQuery {
  Family family = Family::bm;
  double nu = 0.0;  // BESQ index
  InitialConfig init;
  double s = 1.0;  // time of the first argument
  double x = 0.0;
  double t = 1.0;  // time of the second argument
  double y = 0.0;
};

// K(s,x; t,y) = sum_{n<N} phi_n^(+)(s,x; xi) phi_n^(-)(t,y; xi)
//               - 1(s>t) p(s-t, x|y).
// Supports distinct-atom configurations and the pure origin
// configuration; mixed multiplicities are rejected.
double corr_kernel(const KernelQuery& q);

// Correlation function: determinant of corr_kernel over all listed
// space-time points.  times must be strictly increasing; points[m] are
// the spatial positions observed at times[m].
double corr_fn(Family family, double nu, const std::vector<double>& times,
               const std::vector<std::vector<double>>& points,
               const InitialConfig& xi);

// Multitime transition density
//   h_N(x^(M)) * prod_m f(t_{m+1}-t_m, x^(m+1)|x^(m)) * h^(+)(t_1, x^(1); xi)
// for 0 < t_1 < ... < t_M and distinct-point intermediate configurations.
double multitime_pdf(Family family, double nu, const std::vector<double>& times,
                     const std::vector<std::vector<double>>& configs,
                     const InitialConfig& xi);

}  // namespace rmt
