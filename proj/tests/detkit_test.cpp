#include "rmt/detkit.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "rmt/philox.hpp"
#include "testutil.hpp"

using namespace rmt;
using rmttest::rel_err;

namespace {

cplx rand_cplx(PhiloxStream& rng, double half_width) {
  return {half_width * (2.0 * rng.next_uniform() - 1.0),
          half_width * (2.0 * rng.next_uniform() - 1.0)};
}

// n complex points with |Re|,|Im| <= half_width, pairwise separation (and
// separation from `avoid`) at least min_sep.
std::vector<cplx> separated_points(PhiloxStream& rng, int n, double half_width,
                                   double min_sep,
                                   const std::vector<cplx>& avoid = {}) {
  std::vector<cplx> pts;
  while (static_cast<int>(pts.size()) < n) {
    cplx c = rand_cplx(rng, half_width);
    bool ok = true;
    for (const cplx& p : pts)
      if (std::abs(c - p) < min_sep) ok = false;
    for (const cplx& p : avoid)
      if (std::abs(c - p) < min_sep) ok = false;
    if (ok) pts.push_back(c);
  }
  return pts;
}

ComplexMatrix vandermonde_matrix(const std::vector<cplx>& x) {
  int n = static_cast<int>(x.size());
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    cplx p = 1.0;
    for (int k = 0; k < n; ++k) {
      m(j, k) = p;
      p *= x[j];
    }
  }
  return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix c(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < b.cols; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < a.cols; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

}  // namespace

TEST_SUITE("detkit") {

TEST_CASE("det basic values") {
  ComplexMatrix id(3, 3);
  for (int i = 0; i < 3; ++i) id(i, i) = 1.0;
  CHECK(rel_err(det(id), cplx(1.0)) < 1e-15);

  ComplexMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;
  m(1, 0) = 3.0;
  m(1, 1) = 4.0;
  CHECK(rel_err(det(m), cplx(-2.0)) < 1e-14);

  ComplexMatrix r(2, 2);
  r(0, 0) = r(0, 1) = r(1, 0) = r(1, 1) = 1.0;
  CHECK(std::abs(det(r)) < 1e-14);

  ComplexMatrix bad(2, 3);
  CHECK_THROWS_AS(det(bad), std::invalid_argument);
}

TEST_CASE("det is multiplicative on random 4x4 pairs") {
  PhiloxStream rng(2024, 0);
  for (int rep = 0; rep < 20; ++rep) {
    ComplexMatrix a(4, 4), b(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        a(i, j) = rand_cplx(rng, 1.0);
        b(i, j) = rand_cplx(rng, 1.0);
      }
    CHECK(rel_err(det(matmul(a, b)), det(a) * det(b)) < 1e-10);
  }
}

TEST_CASE("vandermonde_product small values") {
  CHECK(vandermonde_product(std::vector<double>{5.0}, 1) ==
        doctest::Approx(1.0));
  CHECK(vandermonde_product(std::vector<double>{1.0, 3.0}, 2) ==
        doctest::Approx(2.0));
  CHECK(vandermonde_product(std::vector<double>{0.0, 1.0, 2.0}, 3) ==
        doctest::Approx(2.0));
  CHECK(vandermonde_product(std::vector<double>{1.0, 2.0, 4.0}) ==
        doctest::Approx(6.0));
}

TEST_CASE("vandermonde_product equals the matrix determinant") {
  PhiloxStream rng(7, 1);
  for (int n = 1; n <= 8; ++n) {
    std::vector<cplx> x = separated_points(rng, n, 2.0, 0.15);
    CHECK(rel_err(vandermonde_product(x, n), det(vandermonde_matrix(x))) <
          1e-10);
  }
}

TEST_CASE("gen_vandermonde_det special shapes") {
  // (n, 0) reduces to the plain Vandermonde determinant
  std::vector<cplx> x{cplx(0.3, 0.2), cplx(-1.1, 0.0), cplx(0.9, -0.7)};
  std::vector<cplx> dummy{0.0, 0.0, 0.0};
  CHECK(rel_err(gen_vandermonde_det(3, 0, x, dummy),
                vandermonde_product(x, 3)) < 1e-12);

  // (1,1): rows (1, a_j) so the determinant is a2 - a1
  std::vector<cplx> x2{cplx(0.4, 0.0), cplx(1.7, 0.0)};
  std::vector<cplx> a2{cplx(0.9, 0.3), cplx(-0.2, 1.1)};
  CHECK(rel_err(gen_vandermonde_det(1, 1, x2, a2), a2[1] - a2[0]) < 1e-13);

  std::vector<cplx> x3{1.0, 3.0};
  std::vector<cplx> dummy2{0.0, 0.0};
  CHECK(rel_err(gen_vandermonde_det(2, 0, x3, dummy2), cplx(2.0)) < 1e-13);

  CHECK_THROWS_AS(gen_vandermonde_det(2, 1, x2, a2), std::invalid_argument);
}

TEST_CASE("cauchy_det values and closed form") {
  CHECK(rel_err(cauchy_det({cplx(2.0)}, {cplx(3.0)}), cplx(0.2)) < 1e-14);

  PhiloxStream rng(11, 0);
  for (int n = 2; n <= 3; ++n)
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<cplx> x = separated_points(rng, n, 2.0, 0.2);
      std::vector<cplx> y = separated_points(rng, n, 2.0, 0.2);
      for (cplx& v : y) v += 5.0;  // keep x_j + y_k away from zero
      cplx closed = vandermonde_product(x, n) * vandermonde_product(y, n);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) closed /= x[j] + y[k];
      CHECK(rel_err(cauchy_det(x, y), closed) < 1e-12);
    }
}

TEST_CASE("cauchy_det antisymmetry and singular input") {
  std::vector<cplx> x{cplx(0.3), cplx(1.4)}, y{cplx(2.0), cplx(2.9)};
  cplx base = cauchy_det(x, y);
  std::swap(x[0], x[1]);
  CHECK(rel_err(cauchy_det(x, y), -base) < 1e-13);
  CHECK_THROWS_AS(cauchy_det({cplx(1.0)}, {cplx(-1.0)}),
                  std::invalid_argument);
}

TEST_CASE("ishikawa identity small cases") {
  auto [l1, r1] = ishikawa_both_sides(1, {cplx(0.2, 0.1)}, {cplx(1.5, -0.4)},
                                      {cplx(0.7, 0.0)}, {cplx(-0.9, 0.6)});
  cplx direct = (cplx(-0.9, 0.6) - cplx(0.7, 0.0)) /
                (cplx(1.5, -0.4) - cplx(0.2, 0.1));
  CHECK(rel_err(l1, direct) < 1e-13);
  CHECK(rel_err(r1, direct) < 1e-12);

  // a == b == 1 makes every numerator vanish
  auto [l2, r2] =
      ishikawa_both_sides(2, {cplx(0.0), cplx(1.0)}, {cplx(2.0), cplx(3.0)},
                          {cplx(1.0), cplx(1.0)}, {cplx(1.0), cplx(1.0)});
  CHECK(std::abs(l2) < 1e-13);
  CHECK(std::abs(r2) < 1e-12);
}

TEST_CASE("ishikawa identity holds on random draws up to n = 4") {
  PhiloxStream rng(5150, 0);
  for (int n = 1; n <= 4; ++n)
    for (int rep = 0; rep < 12; ++rep) {
      std::vector<cplx> x = separated_points(rng, n, 2.0, 0.1);
      std::vector<cplx> y = separated_points(rng, n, 2.0, 0.1, x);
      std::vector<cplx> a(n), b(n);
      for (int j = 0; j < n; ++j) {
        a[j] = rand_cplx(rng, 2.0);
        b[j] = rand_cplx(rng, 2.0);
      }
      auto [lhs, rhs] = ishikawa_both_sides(n, x, y, a, b);
      CHECK(rel_err(lhs, rhs) < 1e-9);
    }
}

TEST_CASE("ishikawa rejects coincident x and y") {
  CHECK_THROWS_AS(ishikawa_both_sides(1, {cplx(0.5)}, {cplx(0.5)},
                                      {cplx(1.0)}, {cplx(2.0)}),
                  std::invalid_argument);
}

TEST_CASE("vandermonde splits as h_n * h_n * cross product") {
  // h_{2n}(a) = h_n(a_{1..n}) h_n(a_{n+1..2n}) prod_{j<=n<k}(a_k - a_j)
  PhiloxStream rng(99, 0);
  for (int n = 1; n <= 4; ++n)
    for (int rep = 0; rep < 8; ++rep) {
      std::vector<cplx> alpha = separated_points(rng, 2 * n, 2.0, 0.1);
      std::vector<cplx> lo(alpha.begin(), alpha.begin() + n);
      std::vector<cplx> hi(alpha.begin() + n, alpha.end());
      cplx cross = 1.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) cross *= hi[k] - lo[j];
      cplx split = vandermonde_product(lo, n) * vandermonde_product(hi, n) *
                   cross;
      CHECK(rel_err(split, vandermonde_product(alpha, 2 * n)) < 1e-10);
    }
}

}  // TEST_SUITE
