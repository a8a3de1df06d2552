#ifndef KNEAD_KNEADING_HPP
#define KNEAD_KNEADING_HPP

#include <vector>

#include "knead/finite_rank.hpp"
#include "knead/pm_map.hpp"
#include "knead/series.hpp"

namespace knead {

// The one-sided step form at c: side minus gives the indicator of [c, b_i],
// side plus gives -1 on ]c, b_i]; zero outside c's interval.
Form step_form(const Omega& omega, const Rational& c, Side side);

// The pair (eps F_#0, eps F_#1): sign-weighted base action with corrections
// omega_c^s (x) eps v_c^s, indexed by (c, side) over C_F with zero columns
// retained for index alignment.
FiniteRankPair signed_pair(const PMMap& f);
// The pair (F_#0, F_#1): unsigned analogue.
FiniteRankPair unsigned_pair(const PMMap& f);

struct KneadingIndex {
  Rational point;
  Side side;
};

struct KneadingData {
  std::vector<KneadingIndex> indices;  // size p = 2 #C_F
  SeriesMatrix M, N;
  TruncatedSeries D, L;
};

KneadingData kneading_matrices(const PMMap& f, int degree);

// sigma(I) of a lap, computed from the step forms and cross-checked against
// the one-sided inequality characterization.
int sigma(const Omega& omega, const Lap& lap);

struct TraceIdentityRow {
  long sum_sigma = 0;
  long sum_signed_sigma = 0;
  Rational trace_unsigned;  // from L via log-derivative
  Rational trace_signed;    // from D
  long fix_neg = 0;
  TraceIdentityRow() : trace_unsigned(0), trace_signed(0) {}
};

struct TraceIdentityReport {
  bool ok = false;
  int first_bad_n = -1;
  std::vector<TraceIdentityRow> rows;  // n = 1..n_max
};

// Per-iterate check of the lap-sum trace formulas and the trace-difference
// identity 2 #Fix^-(F^n).
TraceIdentityReport trace_identity_check(const PMMap& f, int n_max, int degree, long budget);

struct SeriesIdentityReport {
  bool ok = false;
  int first_mismatch = -1;
  TruncatedSeries lhs, rhs;
  SeriesIdentityReport(int degree) : lhs(degree), rhs(degree) {}
};

// exp(sum 2 #Fix^-(F^n) z^n / n) against L(z) D(z)^{-1}, to degree N.
SeriesIdentityReport theorem_t9_check(const PMMap& f, int degree, long budget);

}  // namespace knead

#endif
