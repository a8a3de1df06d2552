#ifndef KNEAD_FORMAL_HPP
#define KNEAD_FORMAL_HPP

#include <functional>
#include <map>
#include <utility>

#include "knead/rational.hpp"

namespace knead {

// Finite rational combination of points of Omega; the computational stand-in
// for elements of the chain space on Omega.
class FormalVector {
public:
  FormalVector() = default;

  static FormalVector point(const Rational& x, const Rational& coeff = Rational(1)) {
    FormalVector v;
    v.add(x, coeff);
    return v;
  }

  void add(const Rational& x, const Rational& coeff) {
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.try_emplace(x, coeff);
    if (!inserted) {
      it->second += coeff;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  Rational coefficient(const Rational& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  const std::map<Rational, Rational>& terms() const { return terms_; }

  FormalVector& operator+=(const FormalVector& o) {
    for (const auto& [x, c] : o.terms_) add(x, c);
    return *this;
  }

  friend FormalVector operator*(const Rational& a, const FormalVector& v) {
    FormalVector out;
    if (sgn(a) == 0) return out;
    for (const auto& [x, c] : v.terms_) out.terms_.emplace(x, a * c);
    return out;
  }

  friend bool operator==(const FormalVector& a, const FormalVector& b) { return a.terms_ == b.terms_; }

private:
  std::map<Rational, Rational> terms_;
};

// Exact linear form on formal vectors, given pointwise by an evaluator.
class Form {
public:
  using Evaluator = std::function<Rational(const Rational&)>;

  Form() : eval_([](const Rational&) { return Rational(0); }) {}
  explicit Form(Evaluator eval) : eval_(std::move(eval)) {}

  // Indicator-style step pieces; see step_form() in kneading.hpp for the
  // one-sided critical forms.
  static Form indicator_point(const Rational& p, const Rational& value = Rational(1)) {
    return Form([p, value](const Rational& x) { return x == p ? value : Rational(0); });
  }
  // Value on a closed/half-open interval piece, zero outside.
  static Form interval(const Rational& lo, const Rational& hi, bool closed_lo, bool closed_hi,
                       const Rational& value) {
    return Form([=](const Rational& x) {
      bool in_lo = closed_lo ? x >= lo : x > lo;
      bool in_hi = closed_hi ? x <= hi : x < hi;
      return (in_lo && in_hi) ? value : Rational(0);
    });
  }
  // The coordinate form x -> x (the length form on differences).
  static Form coordinate() {
    return Form([](const Rational& x) { return x; });
  }

  Rational operator()(const Rational& x) const { return eval_(x); }
  Rational operator()(const FormalVector& v) const {
    Rational acc(0);
    for (const auto& [x, c] : v.terms()) acc += c * eval_(x);
    return acc;
  }

private:
  Evaluator eval_;
};

}  // namespace knead

#endif
