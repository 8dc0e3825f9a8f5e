#pragma once

// Counter-based pseudorandom generator (Philox 4x64, 10 rounds) with
// independent streams keyed by (seed, stream).  A given (seed, stream,
// draw index) always yields the same value, independent of thread
// scheduling or call interleaving across other streams.

#include <array>
#include <cstdint>

namespace rmt {

// One block: 4 uint64 outputs for counter `ctr` under key `key`.
std::array<uint64_t, 4> philox4x64_10(const std::array<uint64_t, 4>& ctr,
                                      const std::array<uint64_t, 2>& key);

class PhiloxStream {
 public:
  PhiloxStream(uint64_t seed, uint64_t stream)
      : key_{seed, stream}, counter_{0, 0, 0, 0}, index_(4) {}

  uint64_t next_u64();

  // uniform on (0,1): ((x >> 11) + 0.5) * 2^-53
  double next_uniform();

  // standard normal via Box-Muller on uniform pairs
  double next_gaussian();

  // Gamma(shape, 1), shape > 0 (Marsaglia-Tsang squeeze)
  double next_gamma(double shape);

  // chi-distributed with k degrees of freedom: sqrt(2 * Gamma(k/2))
  double next_chi(double k);

 private:
  std::array<uint64_t, 2> key_;
  std::array<uint64_t, 4> counter_;
  std::array<uint64_t, 4> block_{};
  unsigned index_;  // 4 means "no block generated yet"
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace rmt
