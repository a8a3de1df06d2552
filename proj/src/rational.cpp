#include "knead/rational.hpp"

#include <cctype>

#include "knead/error.hpp"

namespace knead {

Rational parse_rational(std::string_view text) {
  if (text.empty()) raise(Errc::parse_error, "empty rational literal");
  for (char ch : text) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' || ch == '/'))
      raise(Errc::parse_error, "bad character in rational literal '" + std::string(text) + "'");
  }
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), std::string(text).c_str(), 10) != 0)
    raise(Errc::parse_error, "malformed rational literal '" + std::string(text) + "'");
  if (sgn(q.get_den()) == 0)
    raise(Errc::parse_error, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

double to_double(const Rational& q) { return q.get_d(); }

std::vector<std::string> to_strings(const std::vector<Rational>& qs) {
  std::vector<std::string> out;
  out.reserve(qs.size());
  for (const auto& q : qs) out.push_back(q.get_str());
  return out;
}

}  // namespace knead
