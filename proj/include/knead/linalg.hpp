#ifndef KNEAD_LINALG_HPP
#define KNEAD_LINALG_HPP

#include <optional>
#include <vector>

#include "knead/rational.hpp"

namespace knead {

class RationalMatrix {
public:
  RationalMatrix() : rows_(0), cols_(0) {}
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, Rational(0)) {}

  static RationalMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  Rational trace() const;

private:
  int rows_, cols_;
  std::vector<Rational> a_;
};

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
bool operator==(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix matrix_power(const RationalMatrix& a, int n);

// Basis of the null space {x : A x = 0}, scaled to integer vectors.
std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& a);

// One solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const RationalMatrix& a, const std::vector<Rational>& b);

// Coefficients of det(lambda I - A), constant term first. Exact
// (Faddeev-LeVerrier).
std::vector<Rational> characteristic_polynomial(const RationalMatrix& a);

// Coefficients of det(I - z A), constant term first (the reversed
// characteristic polynomial).
std::vector<Rational> det_id_minus_z_poly(const RationalMatrix& a);

// Largest root modulus of the characteristic polynomial; 0 for the empty
// matrix. Exact coefficients, floating root extraction.
double spectral_radius(const RationalMatrix& a);

}  // namespace knead

#endif
