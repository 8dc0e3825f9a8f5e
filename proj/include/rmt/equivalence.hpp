#pragma once

// Monte Carlo verification of the time-shift identity: averaging the
// general-initial-configuration determinantal objects over a GUE or
// chGUE initial law with variance parameter sigma2 reproduces the
// origin-started objects at total time t + sigma2.
//
// Every verifier returns a report with one entry per probe point:
// (estimate, stderr, closed form, z).  A report passes when every
// |z| <= 3 and at least 95% of the points have |z| <= 2; the slack
// between 2 and 3 absorbs multiple testing over large grids.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rmt/biorth.hpp"
#include "rmt/ensembles.hpp"

namespace rmt {

struct VerifyPoint {
  double x = 0.0;  // probe label: position, configuration index, ...
  double estimate = 0.0;
  double stderr_val = 0.0;
  double closed_form = 0.0;
  double z = 0.0;
  bool pass = false;  // |z| <= 3
};

struct VerifyReport {
  std::string op;
  std::string family;  // "bm" or "besq"
  std::map<std::string, double> params;
  long samples = 0;
  uint64_t seed = 0;
  std::vector<VerifyPoint> points;
  bool pass = false;
};

// E_xi[K^xi(t,x; t,x)] vs the extended Hermite/Laguerre kernel at total
// time t + sigma2, on a grid of positions (common random numbers).
VerifyReport verify_onepoint(Family family, int N, double nu, double sigma2,
                             double t, const std::vector<double>& grid,
                             long samples, uint64_t seed, int threads = 1);

// E_xi[det_{j,k<=L} K^xi(t,x_j; t,x_k)] vs the determinant of the
// shifted extended kernel; one report entry for the block.
VerifyReport verify_det_block(Family family, int N, double nu, double sigma2,
                              double t, const std::vector<double>& block,
                              long samples, uint64_t seed, int threads = 1);

// E_xi[p^xi(t, y)] over test configurations y vs the origin-started
// density at t + sigma2 (which is cross-checked against the ensemble
// eigenvalue density at variance t + sigma2 to 1e-8).
VerifyReport verify_density_shift(Family family, int N, double nu,
                                  double sigma2, double t,
                                  const std::vector<Configuration>& tests,
                                  long samples, uint64_t seed,
                                  int threads = 1);

// Two-time check: E_xi[det of the 2x2 space-time kernel matrix at
// (t1,x1),(t2,x2)] -- including the backward 1(s>t) term -- vs the same
// determinant for the origin configuration at shifted times.
VerifyReport verify_multitime(Family family, int N, double nu, double sigma2,
                              double t1, double t2,
                              const std::vector<std::pair<double, double>>& pairs,
                              long samples, uint64_t seed, int threads = 1);

// {op, family, params, samples, seed, grid, estimates, closed_form,
//  stderr, z, point_pass, pass}; floats carry 17 significant digits.
std::string to_json(const VerifyReport& report);

}  // namespace rmt
