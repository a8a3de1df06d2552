#ifndef KNEAD_SERIES_HPP
#define KNEAD_SERIES_HPP

#include <vector>

#include "knead/rational.hpp"

namespace knead {

// Power series over Q truncated at a fixed degree. Binary operations carry
// the minimum of the operand degrees; the truncation degree is never
// extended silently.
class TruncatedSeries {
public:
  explicit TruncatedSeries(int degree);
  TruncatedSeries(std::vector<Rational> coeffs);

  static TruncatedSeries constant(const Rational& value, int degree);
  static TruncatedSeries one(int degree) { return constant(Rational(1), degree); }
  // Polynomial coefficients c0, c1, ... promoted (or cut) to `degree`.
  static TruncatedSeries from_poly(const std::vector<Rational>& coeffs, int degree);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& operator[](int n) const { return c_[static_cast<size_t>(n)]; }
  Rational& at(int n) { return c_[static_cast<size_t>(n)]; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const;
  // Degree of the underlying polynomial (highest nonzero index), -1 for 0.
  int poly_degree() const;

  TruncatedSeries truncated(int degree) const;

private:
  std::vector<Rational> c_;
};

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator-(const TruncatedSeries& a);
TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries operator*(const Rational& a, const TruncatedSeries& b);
bool operator==(const TruncatedSeries& a, const TruncatedSeries& b);

// Requires a nonzero constant term.
TruncatedSeries inverse(const TruncatedSeries& u);
// Requires constant term 0.
TruncatedSeries exp(const TruncatedSeries& a);
// Requires constant term 1.
TruncatedSeries log(const TruncatedSeries& u);
// Multiplication by z (shift), dropping the top coefficient.
TruncatedSeries shift_z(const TruncatedSeries& a);

bool equal_to_degree(const TruncatedSeries& a, const TruncatedSeries& b, int degree);
// Smallest n <= degree with a_n != b_n, or -1 if none.
int first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b, int degree);

// Coefficients t_1..t_N of -z d'(z)/d(z); d must have constant term 1.
std::vector<Rational> log_derivative_traces(const TruncatedSeries& d);

class SeriesMatrix {
public:
  SeriesMatrix(int size, int degree);

  int size() const { return size_; }
  int degree() const { return degree_; }
  TruncatedSeries& entry(int i, int j) { return a_[static_cast<size_t>(i * size_ + j)]; }
  const TruncatedSeries& entry(int i, int j) const { return a_[static_cast<size_t>(i * size_ + j)]; }

private:
  int size_;
  int degree_;
  std::vector<TruncatedSeries> a_;
};

// det(Id - z M(z)) truncated at M's degree. The constant term is exactly 1.
TruncatedSeries det_id_minus_z(const SeriesMatrix& m);

struct RadiusEstimate {
  bool at_least_one = false;  // coefficients bounded: radius >= 1
  double value = 1.0;
  double band = 0.0;
};

// Estimate of 1/limsup |c_n|^{1/n} from a log-linear fit over the tail
// coefficients. Requires degree >= 16.
RadiusEstimate radius_estimate(const TruncatedSeries& s);

}  // namespace knead

#endif
