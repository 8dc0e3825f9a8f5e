#include "rmt/philox.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "doctest.h"

using namespace rmt;

namespace {

struct Moments {
  double mean = 0.0, var = 0.0;
};

Moments sample_moments(const std::vector<double>& v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= static_cast<double>(v.size() - 1);
  return m;
}

}  // namespace

TEST_SUITE("philox") {

TEST_CASE("block cipher frozen vectors") {
  // Pinned against an independent reference implementation.
  std::array<uint64_t, 4> b1 = philox4x64_10({1, 0, 0, 0}, {0, 0});
  CHECK(b1[0] == 0x02f4ba6408e4d89bull);
  CHECK(b1[1] == 0x3dd62b0b9ca8c5b2ull);
  CHECK(b1[2] == 0x1c8667a55d902e79ull);
  CHECK(b1[3] == 0x907d7a052fd5b4dcull);

  std::array<uint64_t, 4> b2 = philox4x64_10({2, 0, 0, 0}, {0, 0});
  CHECK(b2[0] == 0x809bf322883987c3ull);
  CHECK(b2[1] == 0x471128b9e807f7ddull);
  CHECK(b2[2] == 0xf250ba0dbec065b7ull);
  CHECK(b2[3] == 0xfc6ed66767a457bcull);

  std::array<uint64_t, 4> b3 = philox4x64_10(
      {0, 0, 0, 0}, {0xffffffffffffffffull, 0xffffffffffffffffull});
  CHECK(b3[0] == 0x44b7493d1acfc229ull);
  CHECK(b3[1] == 0x6636af8e997921ddull);
  CHECK(b3[2] == 0x3f73e132b5b3780eull);
  CHECK(b3[3] == 0x605644dde03b01b1ull);

  std::array<uint64_t, 4> b4 = philox4x64_10(
      {2, 2, 3, 4}, {0x123456789abcdef0ull, 0x0fedcba987654321ull});
  CHECK(b4[0] == 0x0dffdf2114654e9dull);
  CHECK(b4[1] == 0xa48adf13e3e71ba2ull);
  CHECK(b4[2] == 0xcd18be9ba4b17f43ull);
  CHECK(b4[3] == 0x1faabf42c99a4418ull);

  std::array<uint64_t, 4> b5 = philox4x64_10({0xdeadbef0ull, 0, 0, 0}, {42, 7});
  CHECK(b5[0] == 0x18ed7361115e4a63ull);
  CHECK(b5[1] == 0x109ed755fbdc15aaull);
  CHECK(b5[2] == 0x348b749f313f896dull);
  CHECK(b5[3] == 0xb99b3ffc7dd4f2e5ull);
}

TEST_CASE("stream consumes counters in block order") {
  // The counter is incremented before each block, so the stream's first
  // four outputs are the counter-1 block, the next four the counter-2 block.
  PhiloxStream s(0, 0);
  std::array<uint64_t, 4> b1 = philox4x64_10({1, 0, 0, 0}, {0, 0});
  std::array<uint64_t, 4> b2 = philox4x64_10({2, 0, 0, 0}, {0, 0});
  for (int i = 0; i < 4; ++i) CHECK(s.next_u64() == b1[i]);
  for (int i = 0; i < 4; ++i) CHECK(s.next_u64() == b2[i]);
}

TEST_CASE("streams are deterministic and independent") {
  PhiloxStream a(123, 5), b(123, 5), c(123, 6), d(124, 5);
  bool all_equal = true, differs_stream = false, differs_seed = false;
  for (int i = 0; i < 64; ++i) {
    uint64_t va = a.next_u64();
    if (va != b.next_u64()) all_equal = false;
    if (va != c.next_u64()) differs_stream = true;
    if (va != d.next_u64()) differs_seed = true;
  }
  CHECK(all_equal);
  CHECK(differs_stream);
  CHECK(differs_seed);
}

TEST_CASE("uniforms live strictly inside (0,1) with the right moments") {
  PhiloxStream s(2718, 0);
  int n = 20000;
  std::vector<double> u(n);
  for (double& x : u) {
    x = s.next_uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
  Moments m = sample_moments(u);
  // mean 1/2 (se ~ 0.0020), variance 1/12 (se ~ 0.0007)
  CHECK(std::abs(m.mean - 0.5) < 0.007);
  CHECK(std::abs(m.var - 1.0 / 12.0) < 0.0025);
}

TEST_CASE("gaussian moments") {
  PhiloxStream s(31415, 2);
  int n = 20000;
  std::vector<double> g(n);
  for (double& x : g) x = s.next_gaussian();
  Moments m = sample_moments(g);
  CHECK(std::abs(m.mean) < 0.022);            // 3 x 1/sqrt(n)
  CHECK(std::abs(m.var - 1.0) < 0.032);       // 3 x sqrt(2/n)
  double third = 0.0;
  for (double x : g) third += x * x * x;
  third /= n;
  CHECK(std::abs(third) < 0.06);  // E Z^3 = 0, se ~ sqrt(15/n)
}

TEST_CASE("gamma moments for large and small shape") {
  PhiloxStream s(6021023, 0);
  int n = 20000;
  for (double shape : {2.5, 0.5}) {
    std::vector<double> g(n);
    for (double& x : g) {
      x = s.next_gamma(shape);
      REQUIRE(x > 0.0);
    }
    Moments m = sample_moments(g);
    double se_mean = std::sqrt(shape / n);
    CHECK(std::abs(m.mean - shape) < 4.0 * se_mean);
    // Var = shape; relative slack because the variance estimator is heavy
    CHECK(std::abs(m.var - shape) < 0.12 * shape);
  }
}

TEST_CASE("chi draws square to chi-squared moments") {
  PhiloxStream s(777, 0);
  int n = 20000;
  double k = 3.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    double c = s.next_chi(k);
    REQUIRE(c >= 0.0);
    sum_sq += c * c;
  }
  double mean_sq = sum_sq / n;  // E chi_k^2 = k, se = sqrt(2k/n)
  CHECK(std::abs(mean_sq - k) < 4.0 * std::sqrt(2.0 * k / n));
}

}  // TEST_SUITE
