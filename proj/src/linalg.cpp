#include "knead/linalg.hpp"

#include <algorithm>

#include "knead/error.hpp"
#include "knead/roots.hpp"

namespace knead {

RationalMatrix RationalMatrix::identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Rational RationalMatrix::trace() const {
  Rational t(0);
  for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      if (sgn(a.at(i, k)) == 0) continue;
      for (int j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != b.at(i, j)) return false;
  return true;
}

RationalMatrix matrix_power(const RationalMatrix& a, int n) {
  RationalMatrix r = RationalMatrix::identity(a.rows());
  for (int k = 0; k < n; ++k) r = r * a;
  return r;
}

namespace {

// Row-reduce in place; returns pivot column per pivot row.
std::vector<int> row_echelon(RationalMatrix& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = -1;
    for (int i = row; i < m.rows(); ++i)
      if (sgn(m.at(i, col)) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(row, j));
    Rational inv = 1 / m.at(row, col);
    for (int j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m.at(i, col)) == 0) continue;
      Rational f = m.at(i, col);
      for (int j = col; j < m.cols(); ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& a) {
  RationalMatrix m = a;
  std::vector<int> pivots = row_echelon(m);
  std::vector<bool> is_pivot(static_cast<size_t>(a.cols()), false);
  for (int c : pivots) is_pivot[static_cast<size_t>(c)] = true;

  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<Rational> v(static_cast<size_t>(a.cols()), Rational(0));
    v[static_cast<size_t>(free)] = 1;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<size_t>(pivots[r])] = -m.at(static_cast<int>(r), free);
    // scale to integers
    mpz_class lcm_den(1);
    for (const auto& q : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), q.get_den().get_mpz_t());
    for (auto& q : v) q *= Rational(lcm_den);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[static_cast<size_t>(i)];
  }
  std::vector<int> pivots = row_echelon(aug);
  for (size_t r = 0; r < pivots.size(); ++r)
    if (pivots[r] == a.cols()) return std::nullopt;  // row (0 .. 0 | 1)

  std::vector<Rational> x(static_cast<size_t>(a.cols()), Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r)
    x[static_cast<size_t>(pivots[r])] = aug.at(static_cast<int>(r), a.cols());
  return x;
}

std::vector<Rational> characteristic_polynomial(const RationalMatrix& a) {
  int n = a.rows();
  // p(lambda) = lambda^n + c_{n-1} lambda^{n-1} + ... + c_0
  std::vector<Rational> coeff(static_cast<size_t>(n) + 1, Rational(0));
  coeff[static_cast<size_t>(n)] = 1;
  RationalMatrix m = RationalMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    if (k > 1) {
      RationalMatrix am = a * m;
      for (int i = 0; i < n; ++i) am.at(i, i) += coeff[static_cast<size_t>(n - k + 1)];
      m = am;
    }
    Rational c = -(a * m).trace() / Rational(k);
    coeff[static_cast<size_t>(n - k)] = c;
  }
  return coeff;
}

std::vector<Rational> det_id_minus_z_poly(const RationalMatrix& a) {
  std::vector<Rational> p = characteristic_polynomial(a);
  std::reverse(p.begin(), p.end());
  return p;
}

double spectral_radius(const RationalMatrix& a) {
  if (a.rows() == 0) return 0.0;
  std::vector<Rational> p = characteristic_polynomial(a);
  double r = 0.0;
  for (const auto& root : poly_roots(p)) r = std::max(r, std::abs(root));
  return r;
}

}  // namespace knead
