#include "rmt/philox.hpp"

#include <cmath>
#include <stdexcept>

namespace rmt {

namespace {

constexpr uint64_t kM0 = 0xD2E7470EE14C6C93ULL;
constexpr uint64_t kM1 = 0xCA5A826395121157ULL;
constexpr uint64_t kW0 = 0x9E3779B97F4A7C15ULL;
constexpr uint64_t kW1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(uint64_t a, uint64_t b, uint64_t& hi, uint64_t& lo) {
  __uint128_t p = static_cast<__uint128_t>(a) * b;
  hi = static_cast<uint64_t>(p >> 64);
  lo = static_cast<uint64_t>(p);
}

}  // namespace

std::array<uint64_t, 4> philox4x64_10(const std::array<uint64_t, 4>& ctr,
                                      const std::array<uint64_t, 2>& key) {
  std::array<uint64_t, 4> c = ctr;
  std::array<uint64_t, 2> k = key;
  for (int round = 0; round < 10; ++round) {
    uint64_t hi0, lo0, hi1, lo1;
    mulhilo(kM0, c[0], hi0, lo0);
    mulhilo(kM1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kW0;
    k[1] += kW1;
  }
  return c;
}

uint64_t PhiloxStream::next_u64() {
  if (index_ == 4) {
    // counter is advanced before each block, so the first block sits at 1
    for (int i = 0; i < 4; ++i)
      if (++counter_[i] != 0) break;
    block_ = philox4x64_10(counter_, key_);
    index_ = 0;
  }
  return block_[index_++];
}

double PhiloxStream::next_uniform() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double PhiloxStream::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_uniform(), u2 = next_uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

double PhiloxStream::next_gamma(double shape) {
  if (shape <= 0.0) throw std::invalid_argument("next_gamma: shape must be > 0");
  if (shape < 1.0) {
    double u = next_uniform();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = next_gaussian();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = next_uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double PhiloxStream::next_chi(double k) {
  return std::sqrt(2.0 * next_gamma(0.5 * k));
}

}  // namespace rmt
