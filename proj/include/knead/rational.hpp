#ifndef KNEAD_RATIONAL_HPP
#define KNEAD_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace knead {

// Exact rational scalar. All map data, series coefficients and counts are
// kept in this type; doubles appear only in root extraction and fits.
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
double to_double(const Rational& q);

// mpq_class(num, den) does not canonicalize; always build ratios here.
inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}
inline int sign_of(const Rational& q) { return sgn(q); }
inline Rational abs_of(const Rational& q) { return abs(q); }

std::vector<std::string> to_strings(const std::vector<Rational>& qs);

}  // namespace knead

#endif
