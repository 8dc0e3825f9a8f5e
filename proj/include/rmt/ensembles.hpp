#pragma once

// Eigenvalue laws of the four Gaussian ensembles, exact samplers for
// them, and a deterministic Monte Carlo expectation engine.
//
// Normalization contract (pinned by the N=1 marginals of the densities
// below): GUE matrices have real N(0, sigma2) diagonal entries and
// complex off-diagonal entries with E|H_jk|^2 = sigma2; chiral matrices
// have E|M_jk|^2 = 2*sigma2.  Class C / class D carry 2N x 2N matrix
// semantics but are sampled at the level of their N squared positive
// eigenvalues, whose law is the nu = +1/2 (resp. -1/2) chiral law.

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "rmt/philox.hpp"

namespace rmt {

using cplx = std::complex<double>;
using Configuration = std::vector<double>;  // weakly increasing

enum class EnsembleKind { gue, chgue, class_c, class_d };

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::gue;
  int N = 1;
  double nu = 0.0;  // chiral index; ignored for GUE, forced for C/D
  double sigma2 = 1.0;

  static EnsembleSpec gue(int N, double sigma2) {
    return {EnsembleKind::gue, N, 0.0, sigma2};
  }
  static EnsembleSpec chgue(int N, double nu, double sigma2) {
    return {EnsembleKind::chgue, N, nu, sigma2};
  }
  static EnsembleSpec class_c(int N, double sigma2) {
    return {EnsembleKind::class_c, N, 0.5, sigma2};
  }
  static EnsembleSpec class_d(int N, double sigma2) {
    return {EnsembleKind::class_d, N, -0.5, sigma2};
  }

  // +1/2 for class C, -1/2 for class D, nu for chGUE
  double effective_nu() const;
  void validate() const;
};

struct McReport {
  cplx estimate{0.0, 0.0};
  double stderr_val = 0.0;
  long samples = 0;
  uint64_t seed = 0;
};

/// Ordered-sector (Weyl chamber) densities: N! times the symmetric law.
double gue_pdf(int N, double sigma2, const Configuration& x);
double chgue_pdf(int N, double nu, double sigma2, const Configuration& x);

// One draw from the given seed's stream 0; ascending output.
Configuration sample_gue(int N, double sigma2, uint64_t seed);
Configuration sample_chgue(int N, double nu, double sigma2, uint64_t seed);

// One draw consuming the given stream (shared by the MC drivers;
// class C / class D specs yield their reduced nu = +-1/2 law).
Configuration sample_configuration(const EnsembleSpec& spec, PhiloxStream& rng);

// Vector-valued MC with common random numbers across the `width`
// outputs of f (f appends exactly `width` values per sample).  Sample i
// uses stream (seed, i); block sums of 1024 consecutive samples are
// combined by a fixed pairwise tree, so the estimate is bit-identical
// for any thread count.
std::vector<McReport> mc_expectation_grid(
    const EnsembleSpec& spec,
    const std::function<void(const Configuration&, std::vector<cplx>&)>& f,
    int width, long samples, uint64_t seed, int threads = 1);

McReport mc_expectation(const EnsembleSpec& spec,
                        const std::function<cplx(const Configuration&)>& f,
                        long samples, uint64_t seed, int threads = 1);

}  // namespace rmt
