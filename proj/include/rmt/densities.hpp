#pragma once

// Transition densities of one-dimensional Brownian motion and the
// squared Bessel process BESQ(nu), extended to complex endpoints and
// signed time, plus the Karlin-McGregor determinants built from them.
//
// Conventions (signed time t != 0):
//   p(t, y|x)      = (2*pi*|t|)^{-1/2} exp(-(x-y)^2 / (2t))
//   p_nu(t, y|x)   = (2|t|)^{-(nu+1)} |y|^nu exp(-(x+y)/(2t)) g_nu(x*y/t^2)
// with g_nu(w) = sum_k (w/4)^k / (k! Gamma(k+1+nu)).  For t > 0 and
// x > 0 this is the usual (y/x)^{nu/2} e^{-(x+y)/2t} I_nu(sqrt(xy)/t)/2t;
// for t < 0 with exactly one nonpositive endpoint the phases of the
// half-integer powers and of I_nu at imaginary argument cancel and the
// same entire series gives the real J-Bessel form.

#include <complex>
#include <stdexcept>
#include <vector>

namespace rmt {

using cplx = std::complex<double>;

enum class Family { bm, besq };

// t = 0 is a point mass, not a function; callers treat it symbolically.
struct delta_measure_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

cplx bm_kernel(double t, cplx y, cplx x);

// Domain: nu > -1.  t > 0 requires x, y >= 0.  t < 0 requires at least
// one endpoint <= 0 and at most one endpoint < 0.
double besq_kernel(double nu, double t, double y, double x);

// det[p(t, y_j | x_k)], the non-intersecting-path transition weight.
// Points within each configuration must be distinct (any order).
double km_det_bm(double t, const std::vector<double>& y,
                 const std::vector<double>& x);
double km_det_besq(double nu, double t, const std::vector<double>& y,
                   const std::vector<double>& x);

}  // namespace rmt
