#include "knead/finite_rank.hpp"

#include <cmath>

#include "knead/error.hpp"
#include "knead/roots.hpp"

namespace knead {

FormalVector apply_base(const FiniteRankPair& pair, const FormalVector& v) {
  FormalVector out;
  for (const auto& [x, c] : v.terms()) {
    auto img = pair.base(x);
    if (img) out.add(img->point, c * img->weight);
  }
  return out;
}

FormalVector apply_extended(const FiniteRankPair& pair, const FormalVector& v) {
  FormalVector out = apply_base(pair, v);
  for (const auto& term : pair.corrections) {
    Rational w = term.form(v);
    if (sgn(w) != 0) out += w * term.vector;
  }
  return out;
}

SeriesMatrix pair_matrix(const FiniteRankPair& pair, int degree) {
  int k = static_cast<int>(pair.corrections.size());
  SeriesMatrix m(k, degree);
  for (int j = 0; j < k; ++j) {
    FormalVector v = pair.corrections[static_cast<size_t>(j)].vector;
    for (int n = 0; n <= degree && !v.is_zero(); ++n) {
      for (int i = 0; i < k; ++i) m.entry(i, j).at(n) = pair.corrections[static_cast<size_t>(i)].form(v);
      if (n < degree) v = apply_base(pair, v);
    }
  }
  return m;
}

TruncatedSeries pair_determinant(const FiniteRankPair& pair, int degree) {
  if (pair.corrections.empty()) return TruncatedSeries::one(degree);
  return det_id_minus_z(pair_matrix(pair, degree));
}

std::vector<Rational> pair_traces(const FiniteRankPair& pair, int n_max, int degree) {
  if (n_max > degree) raise(Errc::degree_too_small, "trace order exceeds series degree");
  std::vector<Rational> t = log_derivative_traces(pair_determinant(pair, degree));
  t.resize(static_cast<size_t>(n_max));
  return t;
}

MultiplicativityReport check_multiplicativity(const FiniteRankPair& pu, const FiniteRankPair& pv,
                                              const FiniteRankPair& pw, int degree) {
  MultiplicativityReport report(degree);
  report.middle = pair_determinant(pv, degree);
  report.product = pair_determinant(pu, degree) * pair_determinant(pw, degree);
  report.first_mismatch = first_mismatch(report.middle, report.product, degree);
  report.equal = report.first_mismatch < 0;
  return report;
}

RootBoundReport perturbed_root_bound(const FiniteRankPair& pair, const Form& xi, const FormalVector& v,
                                     int degree, double tol) {
  RootBoundReport report;

  // g(z) = 1 - sum_{n>=0} xi(ext^n(v)) z^{n+1}
  TruncatedSeries g(degree);
  g.at(0) = 1;
  TruncatedSeries growth(degree);  // the raw orbit sums, for the growth fit
  FormalVector u = v;
  for (int n = 0; n + 1 <= degree; ++n) {
    Rational s = xi(u);
    g.at(n + 1) = -s;
    growth.at(n) = s;
    u = apply_extended(pair, u);
  }

  FiniteRankPair perturbed{pair.base, pair.corrections};
  perturbed.corrections.push_back(RankOneTerm{xi, v});

  TruncatedSeries lhs = g * pair_determinant(pair, degree);
  TruncatedSeries rhs = pair_determinant(perturbed, degree);
  report.first_mismatch = first_mismatch(lhs, rhs, degree);
  report.ratio_ok = report.first_mismatch < 0;

  RadiusEstimate rho = radius_estimate(growth);
  if (!rho.at_least_one && rho.value < 1.0) {
    report.root_forced = true;
    report.predicted_modulus = rho.value;
    try {
      auto root = smallest_root_in_disk(pair_determinant(pair, degree), 1.0, tol);
      if (root) {
        report.root_found = true;
        report.root_modulus = root->modulus;
      }
    } catch (const Error&) {
      report.root_found = false;
    }
  }
  return report;
}

}  // namespace knead
