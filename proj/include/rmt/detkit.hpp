#pragma once
#include <complex>
#include <utility>
#include <vector>

// Small dense complex determinants and the Vandermonde / Cauchy / Ishikawa
// identity evaluators. Matrices here are at most ~25x25.

namespace rmt {

using cplx = std::complex<double>;

// Row-major dense complex matrix.
struct ComplexMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<cplx> entries;  // rows * cols, row-major

  ComplexMatrix() = default;
  ComplexMatrix(int r, int c) : rows(r), cols(c), entries(size_t(r) * c) {}
  cplx& operator()(int r, int c) { return entries[size_t(r) * cols + c]; }
  const cplx& operator()(int r, int c) const { return entries[size_t(r) * cols + c]; }
};

// Determinant by LU with partial pivoting; throws on non-square input.
cplx det(const ComplexMatrix& m);

// h_n(x) = prod_{1<=j<k<=n} (x_k - x_j); the empty product (n <= 1) is 1.
cplx vandermonde_product(const std::vector<cplx>& x, int n);
double vandermonde_product(const std::vector<double>& x, int n);

inline cplx vandermonde_product(const std::vector<cplx>& x) {
  return vandermonde_product(x, static_cast<int>(x.size()));
}
inline double vandermonde_product(const std::vector<double>& x) {
  return vandermonde_product(x, static_cast<int>(x.size()));
}

// Determinant of the generalized Vandermonde matrix V^{p,q}(x; a) whose j-th
// row is (1, x_j, ..., x_j^{p-1}, a_j, a_j x_j, ..., a_j x_j^{q-1}).
// Requires len(x) = len(a) = p + q.
cplx gen_vandermonde_det(int p, int q, const std::vector<cplx>& x,
                         const std::vector<cplx>& a);

// det[1 / (x_j + y_k)]; throws if any denominator vanishes.
cplx cauchy_det(const std::vector<cplx>& x, const std::vector<cplx>& y);

// Both sides of the Ishikawa determinant identity:
//   LHS = det_{j,k}[(b_k - a_j) / (y_k - x_j)]
//   RHS = (-1)^{n(n-1)/2} / prod_{j,k}(y_k - x_j)
//         * det V^{n,n}((x,y); (a,b))
// Returned as (LHS, RHS) so callers can assert agreement.
std::pair<cplx, cplx> ishikawa_both_sides(int n, const std::vector<cplx>& x,
                                          const std::vector<cplx>& y,
                                          const std::vector<cplx>& a,
                                          const std::vector<cplx>& b);

}  // namespace rmt
