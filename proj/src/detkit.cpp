#include "rmt/detkit.hpp"

#include <Eigen/Dense>
#include <stdexcept>

namespace rmt {

cplx det(const ComplexMatrix& m) {
  if (m.rows != m.cols) throw std::invalid_argument("det: matrix must be square");
  if (m.rows == 0) return 1.0;
  Eigen::Map<const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      map(m.entries.data(), m.rows, m.cols);
  return Eigen::MatrixXcd(map).partialPivLu().determinant();
}

template <typename T>
static T vandermonde_imp(const std::vector<T>& x, int n) {
  if (int(x.size()) < n) throw std::invalid_argument("vandermonde_product: too few points");
  T h = T(1);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) h *= x[k] - x[j];
  return h;
}

cplx vandermonde_product(const std::vector<cplx>& x, int n) {
  return vandermonde_imp(x, n);
}
double vandermonde_product(const std::vector<double>& x, int n) {
  return vandermonde_imp(x, n);
}

cplx gen_vandermonde_det(int p, int q, const std::vector<cplx>& x,
                         const std::vector<cplx>& a) {
  int n = p + q;
  if (int(x.size()) != n || int(a.size()) != n)
    throw std::invalid_argument("gen_vandermonde_det: need len(x) = len(a) = p+q");
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    cplx pw = 1.0;
    for (int c = 0; c < p; ++c) {
      m(j, c) = pw;
      pw *= x[j];
    }
    pw = a[j];
    for (int c = 0; c < q; ++c) {
      m(j, p + c) = pw;
      pw *= x[j];
    }
  }
  return det(m);
}

cplx cauchy_det(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  int n = int(x.size());
  if (int(y.size()) != n) throw std::invalid_argument("cauchy_det: size mismatch");
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cplx d = x[j] + y[k];
      if (std::abs(d) == 0.0)
        throw std::invalid_argument("cauchy_det: singular denominator");
      m(j, k) = 1.0 / d;
    }
  return det(m);
}

std::pair<cplx, cplx> ishikawa_both_sides(int n, const std::vector<cplx>& x,
                                          const std::vector<cplx>& y,
                                          const std::vector<cplx>& a,
                                          const std::vector<cplx>& b) {
  if (int(x.size()) != n || int(y.size()) != n || int(a.size()) != n ||
      int(b.size()) != n)
    throw std::invalid_argument("ishikawa_both_sides: size mismatch");

  ComplexMatrix lhs(n, n);
  cplx denom = 1.0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      cplx d = y[k] - x[j];
      if (std::abs(d) == 0.0)
        throw std::invalid_argument("ishikawa_both_sides: coincident x and y");
      lhs(j, k) = (b[k] - a[j]) / d;
      denom *= d;
    }

  std::vector<cplx> xy(x), ab(a);
  xy.insert(xy.end(), y.begin(), y.end());
  ab.insert(ab.end(), b.begin(), b.end());
  double sign = (n * (n - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
  cplx rhs = sign / denom * gen_vandermonde_det(n, n, xy, ab);
  return {det(lhs), rhs};
}

}  // namespace rmt
