#include "rmt/ensembles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "rmt/detkit.hpp"
#include "rmt/specfun.hpp"

namespace rmt {

double EnsembleSpec::effective_nu() const {
  switch (kind) {
    case EnsembleKind::class_c:
      return 0.5;
    case EnsembleKind::class_d:
      return -0.5;
    default:
      return nu;
  }
}

void EnsembleSpec::validate() const {
  if (N < 1) throw std::invalid_argument("EnsembleSpec: N must be >= 1");
  if (sigma2 <= 0.0)
    throw std::invalid_argument("EnsembleSpec: sigma2 must be > 0");
  if (kind != EnsembleKind::gue && effective_nu() <= -1.0)
    throw std::invalid_argument("EnsembleSpec: nu must be > -1");
}

double gue_pdf(int N, double sigma2, const Configuration& x) {
  if (sigma2 <= 0.0) throw std::invalid_argument("gue_pdf: sigma2 must be > 0");
  if (static_cast<int>(x.size()) != N)
    throw std::invalid_argument("gue_pdf: configuration size mismatch");
  double h = vandermonde_product(x);
  double sum2 = 0.0;
  double log_c = 0.5 * N * std::log(2.0 * M_PI);
  for (int j = 1; j <= N; ++j) log_c += log_gamma(j);
  for (double v : x) sum2 += v * v;
  return h * h *
         std::exp(-0.5 * N * N * std::log(sigma2) - log_c -
                  sum2 / (2.0 * sigma2));
}

double chgue_pdf(int N, double nu, double sigma2, const Configuration& x) {
  if (sigma2 <= 0.0 || nu <= -1.0)
    throw std::invalid_argument("chgue_pdf: need sigma2 > 0 and nu > -1");
  if (static_cast<int>(x.size()) != N)
    throw std::invalid_argument("chgue_pdf: configuration size mismatch");
  double log_c = N * (N + nu) * std::log(2.0 * sigma2);
  for (int j = 1; j <= N; ++j) log_c += log_gamma(j) + log_gamma(j + nu);
  double h = vandermonde_product(x);
  double sum = 0.0, log_pw = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("chgue_pdf: negative point");
    if (v == 0.0) {
      if (nu > 0.0) return 0.0;
      if (nu < 0.0) return HUGE_VAL;  // integrable edge divergence
      continue;
    }
    sum += v;
    log_pw += nu * std::log(v);
  }
  return h * h * std::exp(log_pw - sum / (2.0 * sigma2) - log_c);
}

namespace {

Configuration sorted_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m,
                                                     Eigen::EigenvaluesOnly);
  Configuration out(es.eigenvalues().size());
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    out[i] = es.eigenvalues()[i];
  return out;  // Eigen returns ascending order
}

Configuration sample_gue_stream(int N, double sigma2, PhiloxStream& rng) {
  double sd = std::sqrt(sigma2);
  Eigen::MatrixXcd h(N, N);
  for (int j = 0; j < N; ++j) {
    h(j, j) = sd * rng.next_gaussian();
    for (int k = j + 1; k < N; ++k) {
      double re = rng.next_gaussian(), im = rng.next_gaussian();
      h(j, k) = (sd / std::sqrt(2.0)) * cplx(re, im);
      h(k, j) = std::conj(h(j, k));
    }
  }
  return sorted_eigenvalues(h);
}

Configuration sample_chgue_stream(int N, double nu, double sigma2,
                                  PhiloxStream& rng) {
  if (nu > -1.0 && nu == std::floor(nu)) {
    // rectangular Gaussian route, E|M_jk|^2 = 2*sigma2
    int rows = N + static_cast<int>(nu);
    double sd = std::sqrt(sigma2);
    Eigen::MatrixXcd m(rows, N);
    for (int j = 0; j < rows; ++j)
      for (int k = 0; k < N; ++k)
        m(j, k) = sd * cplx(rng.next_gaussian(), rng.next_gaussian());
    Eigen::MatrixXcd w = m.adjoint() * m;
    Configuration out = sorted_eigenvalues(w);
    for (double& v : out) v = std::max(v, 0.0);  // clamp eigensolver noise
    return out;
  }
  // bidiagonal beta=2 model: B*B^T eigenvalues carry the nu law at
  // sigma2 = 1; scale once at the end
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(N, N);
  for (int j = 0; j < N; ++j) b(j, j) = rng.next_chi(2.0 * (N + nu - j));
  for (int j = 1; j < N; ++j) b(j, j - 1) = rng.next_chi(2.0 * (N - j));
  Eigen::MatrixXd l = b * b.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(l, Eigen::EigenvaluesOnly);
  Configuration out(N);
  for (int i = 0; i < N; ++i)
    out[i] = sigma2 * std::max(es.eigenvalues()[i], 0.0);
  return out;
}

}  // namespace

Configuration sample_configuration(const EnsembleSpec& spec,
                                   PhiloxStream& rng) {
  spec.validate();
  if (spec.kind == EnsembleKind::gue)
    return sample_gue_stream(spec.N, spec.sigma2, rng);
  return sample_chgue_stream(spec.N, spec.effective_nu(), spec.sigma2, rng);
}

Configuration sample_gue(int N, double sigma2, uint64_t seed) {
  EnsembleSpec::gue(N, sigma2).validate();
  PhiloxStream rng(seed, 0);
  return sample_gue_stream(N, sigma2, rng);
}

Configuration sample_chgue(int N, double nu, double sigma2, uint64_t seed) {
  EnsembleSpec::chgue(N, nu, sigma2).validate();
  PhiloxStream rng(seed, 0);
  return sample_chgue_stream(N, nu, sigma2, rng);
}

namespace {

struct BlockSums {
  std::vector<cplx> sum;
  std::vector<double> sum_sq;  // of |f|^2
};

}  // namespace

std::vector<McReport> mc_expectation_grid(
    const EnsembleSpec& spec,
    const std::function<void(const Configuration&, std::vector<cplx>&)>& f,
    int width, long samples, uint64_t seed, int threads) {
  spec.validate();
  if (samples < 2) throw std::invalid_argument("mc: samples must be >= 2");
  if (width < 1) throw std::invalid_argument("mc: width must be >= 1");
  constexpr long kBlock = 1024;
  long n_blocks = (samples + kBlock - 1) / kBlock;
  std::vector<BlockSums> blocks(n_blocks);

  auto run_block = [&](long b) {
    BlockSums bs;
    bs.sum.assign(width, cplx(0.0, 0.0));
    bs.sum_sq.assign(width, 0.0);
    std::vector<cplx> vals;
    long lo = b * kBlock, hi = std::min(samples, lo + kBlock);
    for (long i = lo; i < hi; ++i) {
      PhiloxStream rng(seed, static_cast<uint64_t>(i));
      Configuration cfg = sample_configuration(spec, rng);
      vals.clear();
      f(cfg, vals);
      if (static_cast<int>(vals.size()) != width)
        throw std::logic_error("mc: integrand width mismatch");
      for (int w = 0; w < width; ++w) {
        bs.sum[w] += vals[w];
        bs.sum_sq[w] += std::norm(vals[w]);
      }
    }
    blocks[b] = std::move(bs);
  };

  threads = static_cast<int>(std::max<long>(1, std::min<long>(threads, n_blocks)));
  if (threads == 1) {
    for (long b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (long b = t; b < n_blocks; b += threads) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  // fixed pairwise tree over block sums, independent of thread count
  std::vector<BlockSums> level = std::move(blocks);
  while (level.size() > 1) {
    std::vector<BlockSums> next;
    next.reserve((level.size() + 1) / 2);
    for (size_t i = 0; i + 1 < level.size(); i += 2) {
      BlockSums m = std::move(level[i]);
      for (int w = 0; w < width; ++w) {
        m.sum[w] += level[i + 1].sum[w];
        m.sum_sq[w] += level[i + 1].sum_sq[w];
      }
      next.push_back(std::move(m));
    }
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }

  std::vector<McReport> out(width);
  for (int w = 0; w < width; ++w) {
    cplx mean = level[0].sum[w] / static_cast<double>(samples);
    double var =
        std::max(0.0, level[0].sum_sq[w] / samples - std::norm(mean));
    out[w] = {mean, std::sqrt(var / std::max<long>(1, samples - 1)), samples,
              seed};
  }
  return out;
}

McReport mc_expectation(const EnsembleSpec& spec,
                        const std::function<cplx(const Configuration&)>& f,
                        long samples, uint64_t seed, int threads) {
  auto wrapped = [&f](const Configuration& cfg, std::vector<cplx>& out) {
    out.push_back(f(cfg));
  };
  return mc_expectation_grid(spec, wrapped, 1, samples, seed, threads)[0];
}

}  // namespace rmt
