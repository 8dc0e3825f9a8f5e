#pragma once

// Trajectory simulation of the noncolliding Brownian motion and the
// noncolliding squared Bessel process, by Euler-Maruyama on the SDEs
// and by growing a random matrix whose spectrum has the exact
// single-time law, plus gap/position summary statistics.

#include <cstdint>
#include <string>
#include <vector>

#include "rmt/densities.hpp"
#include "rmt/ensembles.hpp"

namespace rmt {

struct Trajectory {
  Family family = Family::bm;
  double nu = 0.0;
  std::string method;  // "euler" or "matrix"
  double dt = 0.0;     // euler step (0 for matrix)
  uint64_t seed = 0;
  std::vector<double> times;           // strictly increasing, > 0
  std::vector<Configuration> states;   // ordered; BESQ entries >= 0
};

// Euler-Maruyama from a strictly ordered start.  A step that breaks the
// ordering (or BESQ positivity) is retried at half the step size, up to
// 20 halvings; BESQ with -1 < nu < 0 reflects at the origin.  States
// are recorded at multiples of `record_dt` (default: every step).
Trajectory simulate_euler(Family family, int N, double nu,
                          const Configuration& x0, double dt, double T,
                          uint64_t seed, double record_dt = 0.0,
                          uint64_t stream = 0);

// Gaussian-increment matrix path started from the zero matrix: states
// are the ordered eigenvalues of a Hermitian matrix (BM) or of M^dagger M
// for a growing (N+nu) x N complex matrix (BESQ, integer nu), evaluated
// at the requested times.  Exact in law at each fixed time.
Trajectory simulate_matrix(Family family, int N, double nu,
                           const std::vector<double>& times, uint64_t seed,
                           uint64_t stream = 0);

// Per-time cross-path summaries for a set of trajectories sharing a
// common time grid.
struct GapStatistics {
  std::vector<double> times;
  // [time][coordinate]: sample means / variances / stderr of positions
  std::vector<std::vector<double>> position_mean, position_var,
      position_stderr;
  // [time][gap index j] for gaps x_{j+1} - x_j
  std::vector<std::vector<double>> gap_mean, gap_var, gap_stderr;
  // [time][gap index]: mean of squared gaps, with stderr
  std::vector<std::vector<double>> gap_sq_mean, gap_sq_stderr;
};

GapStatistics gap_statistics(const std::vector<Trajectory>& paths);

}  // namespace rmt
