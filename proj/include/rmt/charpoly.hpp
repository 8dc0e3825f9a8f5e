#pragma once

// Closed-form averages of even products of characteristic polynomials
// over the four Gaussian ensembles, in two algebraically equivalent
// determinantal forms each, plus a Monte Carlo estimator for arbitrary
// product length.
//
// All prefactors are accumulated in log space; the pair forms assemble
// their n x n determinant entries from monic-scaled polynomials so that
// no intermediate exceeds the scale of the final answer.

#include <complex>
#include <vector>

#include "rmt/ensembles.hpp"

namespace rmt {

using cplx = std::complex<double>;

// alpha has length 2n, pairwise distinct (separation >= 1e-6 * scale).
cplx m_gue_pair_form(int n, const std::vector<cplx>& alpha, int N,
                     double sigma2);
cplx m_gue_monic_form(int n, const std::vector<cplx>& alpha, int N,
                      double sigma2);
cplx m_nu_pair_form(int n, const std::vector<cplx>& alpha, int N, double nu,
                    double sigma2);
cplx m_nu_monic_form(int n, const std::vector<cplx>& alpha, int N, double nu,
                     double sigma2);

// Class C / class D averages over 2N x 2N matrices, reduced to the
// nu = +-1/2 chiral forms at alpha^2.  Evaluates both the Laguerre-at-
// squares expression and the odd/even-Hermite expression, requires
// relative agreement 1e-9, and returns the Hermite one.
enum class MatrixClass { c, d };
cplx m_class(MatrixClass kind, int n, const std::vector<cplx>& alpha, int N,
             double sigma2);

// E[prod_a prod_j (alpha_a - x_j)] over the spec's ensemble; any alpha
// length (odd products have no closed form but sample fine).  For
// class C / class D, alpha enters as alpha^2 against the reduced law.
McReport mc_charpoly(const EnsembleSpec& spec, const std::vector<cplx>& alpha,
                     long samples, uint64_t seed, int threads = 1);

}  // namespace rmt
