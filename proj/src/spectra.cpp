#include "knead/spectra.hpp"

#include <algorithm>
#include <cmath>

#include "knead/error.hpp"
#include "knead/kneading.hpp"
#include "knead/roots.hpp"

namespace knead {

long count_fix_neg_lift(const PMMap& f, int n, long budget) {
  long count = 0;
  for (const auto& lap : laps(f, n, budget)) {
    if (lap.slope >= 0) continue;
    Rational x = lap.intercept / (1 - lap.slope);
    if (x > lap.lo && x < lap.hi) ++count;
  }
  return count;
}

namespace {

bool contains_point(const std::vector<GraphPoint>& pts, const GraphPoint& p) {
  return std::any_of(pts.begin(), pts.end(), [&](const GraphPoint& q) { return q == p; });
}

// Germ first-return sign of f^m at a non-vertex fixed point: +1 orientation
// kept, -1 reversed, 0 folded.
int germ_return_sign(const InducedMap& f, const GraphPoint& p, int m) {
  auto germs = f.germs_at(p);
  SidedPoint r0 = germs[0], r1 = germs[1];
  for (int k = 0; k < m; ++k) {
    r0 = f.sided_step(r0);
    r1 = f.sided_step(r1);
  }
  if (r0 == germs[0] && r1 == germs[1]) return 1;
  if (r0 == germs[1] && r1 == germs[0]) return -1;
  return 0;
}

}  // namespace

std::vector<CriticalOrbit> critical_periodic_orbits(const InducedMap& f, int horizon) {
  std::vector<CriticalOrbit> orbits;
  std::vector<GraphPoint> seen;

  for (const auto& c : f.map().critical_points()) {
    GraphPoint q = f.project(c);
    if (contains_point(seen, q)) continue;
    seen.push_back(q);
    for (const auto& orbit : orbits)
      if (contains_point(orbit.points, q)) goto next_point;

    {
      GraphPoint p = q;
      int period = 0;
      for (int k = 1; k <= horizon; ++k) {
        p = f.step(p);
        if (p == q) {
          period = k;
          break;
        }
      }
      if (period == 0) continue;

      CriticalOrbit orbit;
      orbit.period = period;
      p = q;
      for (int k = 0; k < period; ++k) {
        orbit.points.push_back(p);
        orbit.tau.push_back(f.is_vertex(p) ? 0 : germ_return_sign(f, p, period));
        p = f.step(p);
      }
      orbits.push_back(std::move(orbit));
    }
  next_point:;
  }
  return orbits;
}

FixCounts fix_counts(const InducedMap& f, int n_max, long budget, int horizon) {
  FixCounts counts;
  counts.n_max = n_max;
  counts.fix_neg_lift.assign(static_cast<size_t>(n_max), 0);
  counts.p_fix.assign(static_cast<size_t>(n_max), 0);
  counts.p_fix_neg.assign(static_cast<size_t>(n_max), 0);
  counts.fix_neg_graph.assign(static_cast<size_t>(n_max), 0);

  std::vector<LapStats> stats = lap_statistics(f.map(), n_max, budget);
  for (int n = 1; n <= n_max; ++n)
    counts.fix_neg_lift[static_cast<size_t>(n - 1)] = stats[static_cast<size_t>(n - 1)].fix_neg;

  std::vector<CriticalOrbit> orbits = critical_periodic_orbits(f, horizon);
  for (int n = 1; n <= n_max; ++n) {
    long fix = 0, neg = 0;
    for (const auto& orbit : orbits) {
      if (n % orbit.period != 0) continue;
      fix += orbit.period;
      if ((n / orbit.period) % 2 == 1)
        neg += std::count(orbit.tau.begin(), orbit.tau.end(), -1);
    }
    counts.p_fix[static_cast<size_t>(n - 1)] = fix;
    counts.p_fix_neg[static_cast<size_t>(n - 1)] = neg;
    counts.fix_neg_graph[static_cast<size_t>(n - 1)] =
        counts.fix_neg_lift[static_cast<size_t>(n - 1)] + neg;
  }
  return counts;
}

long fix_neg_graph_direct(const InducedMap& f, int n, long budget) {
  long count = count_fix_neg_lift(f.map(), n, budget);

  std::vector<GraphPoint> points;
  for (const auto& lap : laps(f.map(), n, budget)) {
    for (const Rational& endpoint : {lap.lo, lap.hi}) {
      GraphPoint p = f.project(endpoint);
      if (!contains_point(points, p)) points.push_back(p);
    }
  }
  for (const auto& p : points) {
    if (f.is_vertex(p)) continue;
    GraphPoint q = p;
    for (int k = 0; k < n; ++k) q = f.step(q);
    if (!(q == p)) continue;
    if (germ_return_sign(f, p, n) == -1) ++count;
  }
  return count;
}

LefschetzZeta zeta_lefschetz(const InducedMap& f, int degree) {
  LefschetzZeta zeta(degree);
  zeta.numerator = det_id_minus_z_poly(f.h1_matrix());
  zeta.denominator = det_id_minus_z_poly(f.h0_matrix());
  zeta.series = TruncatedSeries::from_poly(zeta.numerator, degree) *
                inverse(TruncatedSeries::from_poly(zeta.denominator, degree));
  return zeta;
}

TruncatedSeries zeta_minus_direct(const InducedMap& f, int degree, long budget, int horizon) {
  FixCounts counts = fix_counts(f, degree, budget, horizon);
  TruncatedSeries a(degree);
  for (int n = 1; n <= degree; ++n)
    a.at(n) = rat(2 * counts.fix_neg_graph[static_cast<size_t>(n - 1)], n);
  return exp(a);
}

namespace {

TruncatedSeries p_correction_exponent(const InducedMap& f, int degree, int horizon, bool negative_only) {
  std::vector<CriticalOrbit> orbits = critical_periodic_orbits(f, horizon);
  TruncatedSeries a(degree);
  for (int n = 1; n <= degree; ++n) {
    long fix = 0, neg = 0;
    for (const auto& orbit : orbits) {
      if (n % orbit.period != 0) continue;
      fix += orbit.period;
      if ((n / orbit.period) % 2 == 1)
        neg += std::count(orbit.tau.begin(), orbit.tau.end(), -1);
    }
    a.at(n) = negative_only ? rat(2 * neg, n) : rat(2 * neg - fix, n);
  }
  return a;
}

}  // namespace

TruncatedSeries zeta_minus(const InducedMap& f, int degree, int horizon) {
  KneadingData kd = kneading_matrices(f.map(), degree);
  return kd.L * inverse(kd.D) * exp(p_correction_exponent(f, degree, horizon, true));
}

TruncatedSeries zeta_mt(const InducedMap& f, int degree, int horizon) {
  return zeta_minus(f, degree, horizon) * inverse(zeta_lefschetz(f, degree).series);
}

TruncatedSeries correction_factor_H(const InducedMap& f, int degree, int horizon) {
  return exp(p_correction_exponent(f, degree, horizon, false));
}

namespace {

// Least-squares slope of y_n against n over the top half of the window;
// clamped at zero. Index 0 holds n = 1.
double fit_slope(const std::vector<double>& y, int* window_lo = nullptr) {
  int n_hi = static_cast<int>(y.size());
  if (n_hi < 2) return 0.0;
  int n_lo = std::max(1, n_hi / 2);
  if (window_lo) *window_lo = n_lo;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (int n = n_lo; n <= n_hi; ++n) {
    double v = y[static_cast<size_t>(n - 1)];
    sx += n;
    sy += v;
    sxx += double(n) * n;
    sxy += n * v;
    m += 1;
  }
  double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return std::max(0.0, slope);
}

}  // namespace

EntropyReport entropy(const InducedMap& f, const RunConfig& config) {
  EntropyReport report;
  report.tol_root = config.tol_root;
  report.tol_fit = config.tol_fit;

  KneadingData kd = kneading_matrices(f.map(), config.degree);
  try {
    auto root = smallest_root_in_disk(kd.D, 1.0, config.tol_root);
    if (root) {
      report.kneading_root_found = true;
      report.kneading_root_modulus = root->modulus;
      report.kneading_root_residual = root->residual;
      report.h_kneading = -std::log(root->modulus);
    } else {
      report.notes.push_back("no zero of D in the open unit disk");
    }
  } catch (const Error& err) {
    if (err.code() != Errc::unstable_root) throw;
    report.kneading_stable = false;
    report.notes.push_back("kneading root unstable under truncation halving; prefer h_laps");
  }

  std::vector<LapStats> stats;
  int n_window = config.n_max;
  for (; n_window >= 1; --n_window) {
    try {
      stats = lap_statistics(f.map(), n_window, config.lap_budget);
      break;
    } catch (const Error& err) {
      if (err.code() != Errc::lap_budget_exceeded) throw;
    }
  }
  if (n_window < config.n_max)
    report.notes.push_back("lap budget caps the growth window at n = " + std::to_string(n_window));
  report.window_hi = n_window;

  std::vector<double> log_laps, log_var;
  for (const auto& s : stats) {
    log_laps.push_back(std::log(static_cast<double>(s.lap_count)));
    double var = to_double(s.variation);
    log_var.push_back(std::log(std::max(1.0, var)));
  }
  report.h_laps = fit_slope(log_laps, &report.window_lo);
  report.h_variation = fit_slope(log_var);

  FixCounts counts = fix_counts(f, n_window, config.lap_budget, config.orbit_horizon);
  bool all_zero = std::all_of(counts.fix_neg_graph.begin(), counts.fix_neg_graph.end(),
                              [](long c) { return c == 0; });
  if (all_zero) {
    report.h_per_neg = 0.0;
  } else {
    std::vector<double> log_counts;
    for (long c : counts.fix_neg_graph)
      log_counts.push_back(std::log(std::max(1.0, static_cast<double>(c))));
    report.h_per_neg = fit_slope(log_counts);
  }

  report.h_hom = f.h_hom();
  report.h_max = std::max(report.h_per_neg, report.h_hom);

  if (report.kneading_stable) {
    double tol = report.h_per_neg >= report.h_hom - 1e-12 ? std::max(config.tol_root, config.tol_fit)
                                                          : config.tol_root;
    report.theorem1_ok = std::fabs(report.h_kneading - report.h_max) <= tol;
    if (!report.theorem1_ok)
      report.notes.push_back("max formula disagrees with the kneading root beyond tolerance");
  }
  return report;
}

std::vector<long> artin_mazur_oracle(const InducedMap& f, int n_max, long budget) {
  std::vector<LapStats> stats = lap_statistics(f.map(), n_max, budget);
  for (int n = 1; n <= n_max; ++n)
    if (stats[static_cast<size_t>(n - 1)].diagonal_segment)
      raise(Errc::infinite_fixed_set, "a slope-1 lap of level " + std::to_string(n) + " lies on the diagonal");

  std::vector<long> total(static_cast<size_t>(n_max), 0);
  for (int n = 1; n <= n_max; ++n) {
    long count = stats[static_cast<size_t>(n - 1)].fix_crossings;
    std::vector<GraphPoint> points;
    for (const auto& lap : laps(f.map(), n, budget)) {
      for (const Rational& endpoint : {lap.lo, lap.hi}) {
        GraphPoint p = f.project(endpoint);
        if (!contains_point(points, p)) points.push_back(p);
      }
    }
    for (const auto& p : points) {
      GraphPoint q = p;
      for (int k = 0; k < n; ++k) q = f.step(q);
      if (q == p) ++count;
    }
    total[static_cast<size_t>(n - 1)] = count;
  }
  return total;
}

}  // namespace knead
