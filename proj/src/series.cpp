#include "knead/series.hpp"

#include <algorithm>
#include <cmath>

#include "knead/error.hpp"

namespace knead {

TruncatedSeries::TruncatedSeries(int degree) {
  if (degree < 0) raise(Errc::degree_too_small, "series degree must be >= 0");
  c_.assign(static_cast<size_t>(degree) + 1, Rational(0));
}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) raise(Errc::degree_too_small, "series needs at least the constant term");
}

TruncatedSeries TruncatedSeries::constant(const Rational& value, int degree) {
  TruncatedSeries s(degree);
  s.at(0) = value;
  return s;
}

TruncatedSeries TruncatedSeries::from_poly(const std::vector<Rational>& coeffs, int degree) {
  TruncatedSeries s(degree);
  for (size_t n = 0; n < coeffs.size() && n <= static_cast<size_t>(degree); ++n)
    s.at(static_cast<int>(n)) = coeffs[n];
  return s;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return sgn(q) == 0; });
}

int TruncatedSeries::poly_degree() const {
  for (int n = degree(); n >= 0; --n)
    if (sgn(c_[static_cast<size_t>(n)]) != 0) return n;
  return -1;
}

TruncatedSeries TruncatedSeries::truncated(int degree) const {
  TruncatedSeries s(degree);
  for (int n = 0; n <= std::min(degree, this->degree()); ++n) s.at(n) = (*this)[n];
  return s;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  int deg = std::min(a.degree(), b.degree());
  TruncatedSeries s(deg);
  for (int n = 0; n <= deg; ++n) s.at(n) = a[n] + b[n];
  return s;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  int deg = std::min(a.degree(), b.degree());
  TruncatedSeries s(deg);
  for (int n = 0; n <= deg; ++n) s.at(n) = a[n] - b[n];
  return s;
}

TruncatedSeries operator-(const TruncatedSeries& a) {
  TruncatedSeries s(a.degree());
  for (int n = 0; n <= a.degree(); ++n) s.at(n) = -a[n];
  return s;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  int deg = std::min(a.degree(), b.degree());
  TruncatedSeries s(deg);
  for (int i = 0; i <= deg; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; i + j <= deg; ++j) {
      if (sgn(b[j]) == 0) continue;
      s.at(i + j) += a[i] * b[j];
    }
  }
  return s;
}

TruncatedSeries operator*(const Rational& a, const TruncatedSeries& b) {
  TruncatedSeries s(b.degree());
  for (int n = 0; n <= b.degree(); ++n) s.at(n) = a * b[n];
  return s;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.degree() != b.degree()) return false;
  return equal_to_degree(a, b, a.degree());
}

TruncatedSeries inverse(const TruncatedSeries& u) {
  if (sgn(u[0]) == 0) raise(Errc::non_unit_constant_term, "series inverse needs a unit constant term");
  int deg = u.degree();
  TruncatedSeries v(deg);
  Rational u0 = 1 / Rational(u[0]);
  v.at(0) = u0;
  for (int n = 1; n <= deg; ++n) {
    Rational acc(0);
    for (int k = 1; k <= n; ++k) acc += u[k] * v[n - k];
    v.at(n) = -u0 * acc;
  }
  return v;
}

TruncatedSeries exp(const TruncatedSeries& a) {
  if (sgn(a[0]) != 0) raise(Errc::wrong_constant_term, "exp needs constant term 0");
  int deg = a.degree();
  TruncatedSeries b(deg);
  b.at(0) = 1;
  // n b_n = sum_{k=1..n} k a_k b_{n-k}
  for (int n = 1; n <= deg; ++n) {
    Rational acc(0);
    for (int k = 1; k <= n; ++k) acc += Rational(k) * a[k] * b[n - k];
    b.at(n) = acc / Rational(n);
  }
  return b;
}

TruncatedSeries log(const TruncatedSeries& u) {
  if (u[0] != 1) raise(Errc::wrong_constant_term, "log needs constant term 1");
  int deg = u.degree();
  TruncatedSeries a(deg);
  for (int n = 1; n <= deg; ++n) {
    Rational acc(0);
    for (int k = 1; k < n; ++k) acc += Rational(k) * a[k] * u[n - k];
    a.at(n) = u[n] - acc / Rational(n);
  }
  return a;
}

TruncatedSeries shift_z(const TruncatedSeries& a) {
  TruncatedSeries s(a.degree());
  for (int n = 1; n <= a.degree(); ++n) s.at(n) = a[n - 1];
  return s;
}

bool equal_to_degree(const TruncatedSeries& a, const TruncatedSeries& b, int degree) {
  return first_mismatch(a, b, degree) < 0;
}

int first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b, int degree) {
  if (degree > a.degree() || degree > b.degree())
    raise(Errc::degree_too_small, "comparison degree exceeds series truncation");
  for (int n = 0; n <= degree; ++n)
    if (a[n] != b[n]) return n;
  return -1;
}

std::vector<Rational> log_derivative_traces(const TruncatedSeries& d) {
  if (d[0] != 1) raise(Errc::wrong_constant_term, "trace extraction needs constant term 1");
  int deg = d.degree();
  // -z d'/d; z d' is known exactly up to the truncation degree.
  TruncatedSeries zd(deg);
  for (int n = 1; n <= deg; ++n) zd.at(n) = Rational(n) * d[n];
  TruncatedSeries t = -(zd * inverse(d));
  std::vector<Rational> traces;
  traces.reserve(static_cast<size_t>(deg));
  for (int n = 1; n <= deg; ++n) traces.push_back(t[n]);
  return traces;
}

SeriesMatrix::SeriesMatrix(int size, int degree) : size_(size), degree_(degree) {
  a_.assign(static_cast<size_t>(size) * static_cast<size_t>(size), TruncatedSeries(degree));
}

namespace {

TruncatedSeries det_cofactor(const SeriesMatrix& a, std::vector<int>& cols, int row) {
  int deg = a.degree();
  if (cols.empty()) return TruncatedSeries::one(deg);
  TruncatedSeries acc(deg);
  for (size_t k = 0; k < cols.size(); ++k) {
    int j = cols[k];
    if (a.entry(row, j).is_zero()) continue;
    std::vector<int> rest;
    rest.reserve(cols.size() - 1);
    for (size_t m = 0; m < cols.size(); ++m)
      if (m != k) rest.push_back(cols[m]);
    TruncatedSeries minor = det_cofactor(a, rest, row + 1);
    TruncatedSeries term = a.entry(row, j) * minor;
    if (k % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

}  // namespace

TruncatedSeries det_id_minus_z(const SeriesMatrix& m) {
  int p = m.size();
  int deg = m.degree();
  if (p == 0) return TruncatedSeries::one(deg);

  SeriesMatrix a(p, deg);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      TruncatedSeries e = -shift_z(m.entry(i, j));
      if (i == j) e.at(0) += 1;
      a.entry(i, j) = e;
    }

  // Gaussian elimination over the series ring. Id - zM(z) is the identity
  // mod z, and the Schur complement keeps that shape, so pivots always have
  // a unit constant term; if an input ever breaks that, fall back to
  // cofactor expansion for small sizes.
  TruncatedSeries det = TruncatedSeries::one(deg);
  for (int k = 0; k < p; ++k) {
    int pivot = -1;
    for (int i = k; i < p; ++i)
      if (sgn(a.entry(i, k)[0]) != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) {
      if (p <= 8) {
        std::vector<int> cols(static_cast<size_t>(p));
        for (int j = 0; j < p; ++j) cols[static_cast<size_t>(j)] = j;
        SeriesMatrix b(p, deg);
        for (int i = 0; i < p; ++i)
          for (int j = 0; j < p; ++j) b.entry(i, j) = a.entry(i, j);
        return det_cofactor(b, cols, 0);
      }
      raise(Errc::non_unit_constant_term, "no unit pivot in series determinant");
    }
    if (pivot != k) {
      for (int j = 0; j < p; ++j) std::swap(a.entry(pivot, j), a.entry(k, j));
      det = -det;
    }
    TruncatedSeries inv_pivot = inverse(a.entry(k, k));
    for (int i = k + 1; i < p; ++i) {
      if (a.entry(i, k).is_zero()) continue;
      TruncatedSeries factor = a.entry(i, k) * inv_pivot;
      for (int j = k; j < p; ++j) a.entry(i, j) = a.entry(i, j) - factor * a.entry(k, j);
    }
    det = det * a.entry(k, k);
  }
  return det;
}

RadiusEstimate radius_estimate(const TruncatedSeries& s) {
  int deg = s.degree();
  if (deg < 16) raise(Errc::degree_too_small, "radius estimate needs degree >= 16");

  std::vector<std::pair<int, double>> tail;
  for (int n = deg / 2; n <= deg; ++n) {
    if (sgn(s[n]) != 0) tail.emplace_back(n, std::log(std::fabs(to_double(s[n]))));
  }
  RadiusEstimate est;
  if (tail.size() < 4) {
    est.at_least_one = true;  // polynomial-like tail
    return est;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [n, y] : tail) {
    sx += n;
    sy += y;
    sxx += double(n) * n;
    sxy += n * y;
  }
  double m = static_cast<double>(tail.size());
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  double icpt = (sy - slope * sx) / m;
  double ss = 0;
  for (auto& [n, y] : tail) {
    double r = y - (slope * n + icpt);
    ss += r * r;
  }
  double se = std::sqrt(ss / (m * (sxx - sx * sx / m)));

  if (slope <= 1e-12) {
    est.at_least_one = true;
    return est;
  }
  est.value = std::exp(-slope);
  est.band = 2.0 * se * est.value;
  return est;
}

}  // namespace knead
