#include "rmt/processes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rmt {

namespace {

bool ordered_valid(const Configuration& x, Family family, double nu) {
  for (size_t j = 0; j < x.size(); ++j) {
    if (family == Family::besq && x[j] < 0.0) return false;
    if (j > 0 && x[j] <= x[j - 1]) return false;
  }
  // allow one particle sitting exactly on the reflecting origin
  (void)nu;
  return true;
}

void euler_propose(const Configuration& x, Configuration& y, double h,
                   Family family, double nu, PhiloxStream& rng) {
  int n = static_cast<int>(x.size());
  for (int j = 0; j < n; ++j) {
    double inter = 0.0;
    for (int k = 0; k < n; ++k)
      if (k != j) inter += 1.0 / (x[j] - x[k]);
    if (family == Family::bm) {
      y[j] = x[j] + inter * h + std::sqrt(h) * rng.next_gaussian();
    } else {
      double drift = 2.0 * (nu + 1.0) + 4.0 * x[j] * inter;
      y[j] = x[j] + drift * h +
             2.0 * std::sqrt(std::max(0.0, x[j]) * h) * rng.next_gaussian();
      if (nu < 0.0) y[j] = std::abs(y[j]);  // reflection at the origin
    }
  }
}

// the interaction drift is singular at coincidence: a full step taken from
// a small gap can overshoot by many gap widths while staying ordered, so
// cap the drift displacement at a quarter of the distance to the nearest
// neighbour before any noise is drawn
bool drift_needs_halving(const Configuration& x, double h, Family family) {
  int n = static_cast<int>(x.size());
  for (int j = 0; j < n; ++j) {
    double inter = 0.0, mingap = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k)
      if (k != j) {
        inter += 1.0 / (x[j] - x[k]);
        mingap = std::min(mingap, std::abs(x[j] - x[k]));
      }
    double sing = (family == Family::bm) ? inter * h : 4.0 * x[j] * inter * h;
    if (std::abs(sing) > 0.25 * mingap) return true;
  }
  return false;
}

// one substep of size h; on ordering violation or an oversized drift move
// recurse into two halves
void euler_advance(Configuration& x, double h, int depth, Family family,
                   double nu, PhiloxStream& rng) {
  if (depth < 20 && x.size() > 1 && drift_needs_halving(x, h, family)) {
    euler_advance(x, h / 2.0, depth + 1, family, nu, rng);
    euler_advance(x, h / 2.0, depth + 1, family, nu, rng);
    return;
  }
  Configuration y(x.size());
  euler_propose(x, y, h, family, nu, rng);
  if (ordered_valid(y, family, nu)) {
    x = std::move(y);
    return;
  }
  if (depth >= 20)
    throw std::runtime_error(
        "simulate_euler: ordering violated after 20 step halvings");
  euler_advance(x, h / 2.0, depth + 1, family, nu, rng);
  euler_advance(x, h / 2.0, depth + 1, family, nu, rng);
}

Configuration sorted_eigs_hermitian(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                     Eigen::EigenvaluesOnly);
  Configuration out(es.eigenvalues().size());
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    out[i] = es.eigenvalues()[i];
  return out;
}

}  // namespace

Trajectory simulate_euler(Family family, int N, double nu,
                          const Configuration& x0, double dt, double T,
                          uint64_t seed, double record_dt, uint64_t stream) {
  if (N < 1 || static_cast<int>(x0.size()) != N)
    throw std::invalid_argument("simulate_euler: bad start configuration");
  if (dt <= 0.0 || T <= 0.0)
    throw std::invalid_argument("simulate_euler: need dt > 0 and T > 0");
  if (family == Family::besq && nu <= -1.0)
    throw std::invalid_argument("simulate_euler: nu must be > -1");
  for (int j = 0; j < N; ++j) {
    if (j > 0 && x0[j] <= x0[j - 1])
      throw std::invalid_argument(
          "simulate_euler: start must be strictly ordered (use the matrix "
          "method to leave a degenerate start)");
    if (family == Family::besq && x0[j] < 0.0)
      throw std::invalid_argument("simulate_euler: negative start point");
  }

  Trajectory traj;
  traj.family = family;
  traj.nu = nu;
  traj.method = "euler";
  traj.dt = dt;
  traj.seed = seed;

  PhiloxStream rng(seed, stream);
  Configuration x = x0;
  double t = 0.0;
  double next_record = (record_dt > 0.0) ? record_dt : 0.0;
  while (t < T - 1e-12) {
    double h = std::min(dt, T - t);
    euler_advance(x, h, 0, family, nu, rng);
    t += h;
    if (record_dt <= 0.0 || t + 1e-9 * dt >= next_record) {
      traj.times.push_back(t);
      traj.states.push_back(x);
      if (record_dt > 0.0)
        while (next_record <= t + 1e-9 * dt) next_record += record_dt;
    }
  }
  if (traj.times.empty() || traj.times.back() < T - 1e-9) {
    traj.times.push_back(t);
    traj.states.push_back(x);
  }
  return traj;
}

Trajectory simulate_matrix(Family family, int N, double nu,
                           const std::vector<double>& times, uint64_t seed,
                           uint64_t stream) {
  if (N < 1) throw std::invalid_argument("simulate_matrix: N must be >= 1");
  if (times.empty())
    throw std::invalid_argument("simulate_matrix: no output times");
  for (size_t i = 0; i < times.size(); ++i)
    if (times[i] <= 0.0 || (i > 0 && times[i] <= times[i - 1]))
      throw std::invalid_argument(
          "simulate_matrix: times must be strictly increasing and > 0");
  int nu_int = static_cast<int>(std::lround(nu));
  if (family == Family::besq && (nu != nu_int || nu_int < 0))
    throw std::invalid_argument(
        "simulate_matrix: the matrix construction needs integer nu >= 0");

  Trajectory traj;
  traj.family = family;
  traj.nu = nu;
  traj.method = "matrix";
  traj.seed = seed;
  traj.times = times;

  PhiloxStream rng(seed, stream);
  if (family == Family::bm) {
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(N, N);
    double prev = 0.0;
    for (double t : times) {
      double sd = std::sqrt(t - prev);
      for (int j = 0; j < N; ++j) {
        h(j, j) += sd * rng.next_gaussian();
        for (int k = j + 1; k < N; ++k) {
          cplx d = (sd / std::sqrt(2.0)) *
                   cplx(rng.next_gaussian(), rng.next_gaussian());
          h(j, k) += d;
          h(k, j) += std::conj(d);
        }
      }
      prev = t;
      traj.states.push_back(sorted_eigs_hermitian(h));
    }
  } else {
    int rows = N + nu_int;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(rows, N);
    double prev = 0.0;
    for (double t : times) {
      double sd = std::sqrt(t - prev);
      for (int j = 0; j < rows; ++j)
        for (int k = 0; k < N; ++k)
          m(j, k) += sd * cplx(rng.next_gaussian(), rng.next_gaussian());
      prev = t;
      Eigen::MatrixXcd w = m.adjoint() * m;
      Configuration st = sorted_eigs_hermitian(w);
      for (double& v : st) v = std::max(v, 0.0);
      traj.states.push_back(st);
    }
  }
  return traj;
}

GapStatistics gap_statistics(const std::vector<Trajectory>& paths) {
  if (paths.empty())
    throw std::invalid_argument("gap_statistics: no trajectories");
  size_t n_times = paths[0].times.size();
  int n_part = static_cast<int>(paths[0].states.at(0).size());
  if (n_part < 2)
    throw std::invalid_argument("gap_statistics: need at least 2 particles");
  for (const Trajectory& p : paths)
    if (p.times != paths[0].times)
      throw std::invalid_argument("gap_statistics: time grids differ");

  GapStatistics gs;
  gs.times = paths[0].times;
  double n_paths = static_cast<double>(paths.size());
  auto summarize = [&](const std::vector<double>& vals, double& mean,
                       double& var, double& se) {
    double s = 0.0;
    for (double v : vals) s += v;
    mean = s / n_paths;
    double sq = 0.0;
    for (double v : vals) sq += (v - mean) * (v - mean);
    var = (vals.size() > 1) ? sq / (n_paths - 1.0) : 0.0;
    se = std::sqrt(var / n_paths);
  };

  for (size_t ti = 0; ti < n_times; ++ti) {
    std::vector<double> pm(n_part), pv(n_part), ps(n_part);
    std::vector<double> gm(n_part - 1), gv(n_part - 1), gse(n_part - 1);
    std::vector<double> g2m(n_part - 1), g2se(n_part - 1);
    std::vector<double> scratch(paths.size());
    for (int c = 0; c < n_part; ++c) {
      for (size_t p = 0; p < paths.size(); ++p)
        scratch[p] = paths[p].states[ti][c];
      summarize(scratch, pm[c], pv[c], ps[c]);
    }
    for (int g = 0; g + 1 < n_part; ++g) {
      for (size_t p = 0; p < paths.size(); ++p)
        scratch[p] = paths[p].states[ti][g + 1] - paths[p].states[ti][g];
      summarize(scratch, gm[g], gv[g], gse[g]);
      for (double& v : scratch) v *= v;
      double dummy_var;
      summarize(scratch, g2m[g], dummy_var, g2se[g]);
    }
    gs.position_mean.push_back(pm);
    gs.position_var.push_back(pv);
    gs.position_stderr.push_back(ps);
    gs.gap_mean.push_back(gm);
    gs.gap_var.push_back(gv);
    gs.gap_stderr.push_back(gse);
    gs.gap_sq_mean.push_back(g2m);
    gs.gap_sq_stderr.push_back(g2se);
  }
  return gs;
}

}  // namespace rmt
