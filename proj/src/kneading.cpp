#include "knead/kneading.hpp"

#include "knead/error.hpp"

namespace knead {

Form step_form(const Omega& omega, const Rational& c, Side side) {
  int idx = omega.interval_index(c);
  if (idx < 0) raise(Errc::point_outside_omega, to_string(c) + " is not in Omega");
  Rational hi = omega.intervals()[static_cast<size_t>(idx)].hi;
  if (side == Side::minus) return Form::interval(c, hi, true, true, Rational(1));
  return Form::interval(c, hi, false, true, Rational(-1));
}

namespace {

FiniteRankPair critical_pair(const PMMap& f, bool with_sign) {
  FiniteRankPair pair;
  pair.base = [f, with_sign](const Rational& x) -> std::optional<PointImage> {
    if (f.is_critical(x)) return std::nullopt;
    const Branch& b = f.branch_at(x);
    return PointImage{b.eval(x), Rational(with_sign ? b.sign : 1)};
  };
  for (const auto& c : f.critical_points()) {
    for (Side side : {Side::minus, Side::plus}) {
      FormalVector v;
      auto limit = f.one_sided(c, side);
      if (limit) v = FormalVector::point(limit->first, Rational(with_sign ? limit->second : 1));
      pair.corrections.push_back(RankOneTerm{step_form(f.domain(), c, side), v});
    }
  }
  return pair;
}

}  // namespace

FiniteRankPair signed_pair(const PMMap& f) { return critical_pair(f, true); }
FiniteRankPair unsigned_pair(const PMMap& f) { return critical_pair(f, false); }

KneadingData kneading_matrices(const PMMap& f, int degree) {
  SeriesMatrix m = pair_matrix(signed_pair(f), degree);
  SeriesMatrix n = pair_matrix(unsigned_pair(f), degree);
  KneadingData data{{}, m, n, det_id_minus_z(m), det_id_minus_z(n)};
  for (const auto& c : f.critical_points()) {
    data.indices.push_back(KneadingIndex{c, Side::minus});
    data.indices.push_back(KneadingIndex{c, Side::plus});
  }
  if (data.D[0] != 1 || data.L[0] != 1)
    raise(Errc::identity_violated, "kneading determinant constant term is not 1");
  return data;
}

int sigma(const Omega& omega, const Lap& lap) {
  Rational u = lap.image_left();   // F^n(c+)
  Rational v = lap.image_right();  // F^n(d-)
  Rational hi = omega.intervals()[static_cast<size_t>(omega.interval_index(lap.lo))].hi;

  int from_forms = 0;
  if (u > lap.lo && u <= hi) from_forms -= 1;  // omega_c^+(v_c^+)
  if (v >= lap.hi && v <= hi) from_forms += 1; // omega_d^-(v_d^-)

  int from_inequalities = 0;
  if (u <= lap.lo && lap.hi <= v) from_inequalities = 1;
  else if (lap.lo < u && v < lap.hi) from_inequalities = -1;

  if (from_forms != from_inequalities)
    raise(Errc::identity_violated,
          "sigma characterizations disagree on lap [" + to_string(lap.lo) + "," + to_string(lap.hi) + "]");
  return from_forms;
}

TraceIdentityReport trace_identity_check(const PMMap& f, int n_max, int degree, long budget) {
  if (degree < n_max) raise(Errc::degree_too_small, "need series degree >= n_max");
  TraceIdentityReport report;
  report.rows.assign(static_cast<size_t>(n_max), TraceIdentityRow());

  scan_laps(f, n_max, budget, [&](const Lap& lap) {
    TraceIdentityRow& row = report.rows[static_cast<size_t>(lap.level - 1)];
    int s = sigma(f.domain(), lap);
    row.sum_sigma += s;
    row.sum_signed_sigma += lap.sign() * s;
    if (lap.slope < 0) {
      Rational x = lap.intercept / (1 - lap.slope);
      if (x > lap.lo && x < lap.hi) row.fix_neg += 1;
    }
  });

  KneadingData kd = kneading_matrices(f, degree);
  std::vector<Rational> tr_signed = log_derivative_traces(kd.D);
  std::vector<Rational> tr_unsigned = log_derivative_traces(kd.L);

  report.ok = true;
  for (int n = 1; n <= n_max; ++n) {
    TraceIdentityRow& row = report.rows[static_cast<size_t>(n - 1)];
    row.trace_signed = tr_signed[static_cast<size_t>(n - 1)];
    row.trace_unsigned = tr_unsigned[static_cast<size_t>(n - 1)];
    bool good = row.trace_unsigned == Rational(row.sum_sigma) &&
                row.trace_signed == Rational(row.sum_signed_sigma) &&
                row.trace_signed - row.trace_unsigned == Rational(2 * row.fix_neg);
    if (!good && report.ok) {
      report.ok = false;
      report.first_bad_n = n;
    }
  }
  return report;
}

SeriesIdentityReport theorem_t9_check(const PMMap& f, int degree, long budget) {
  SeriesIdentityReport report(degree);

  std::vector<LapStats> stats = lap_statistics(f, degree, budget);
  TruncatedSeries a(degree);
  for (int n = 1; n <= degree; ++n)
    a.at(n) = rat(2 * stats[static_cast<size_t>(n - 1)].fix_neg, n);
  report.lhs = exp(a);

  KneadingData kd = kneading_matrices(f, degree);
  report.rhs = kd.L * inverse(kd.D);

  report.first_mismatch = first_mismatch(report.lhs, report.rhs, degree);
  report.ok = report.first_mismatch < 0;
  return report;
}

}  // namespace knead
