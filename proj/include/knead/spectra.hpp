#ifndef KNEAD_SPECTRA_HPP
#define KNEAD_SPECTRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "knead/config.hpp"
#include "knead/graph.hpp"
#include "knead/series.hpp"

namespace knead {

// Exact #Fix^-(F^n) of the lift: interior diagonal crossings on decreasing
// laps of F^n.
long count_fix_neg_lift(const PMMap& f, int n, long budget);

// A periodic orbit of the induced map through pi(C_F), with the germ
// first-return behavior at each point: +1 orientation kept, -1 reversed, 0
// folded or vertex.
struct CriticalOrbit {
  std::vector<GraphPoint> points;
  int period = 0;
  std::vector<int> tau;
};

std::vector<CriticalOrbit> critical_periodic_orbits(const InducedMap& f, int horizon);

struct FixCounts {
  int n_max = 0;
  std::vector<long> fix_neg_lift;   // #Fix^-(F^n)
  std::vector<long> p_fix;          // #P cap Fix(f^n)
  std::vector<long> p_fix_neg;      // #P cap Fix^-(f^n)
  std::vector<long> fix_neg_graph;  // #Fix^-(f^n)
};

FixCounts fix_counts(const InducedMap& f, int n_max, long budget, int horizon);

// Independent route: enumerates fixed points of f^n over laps and over the
// projected critical set of F^n, without the periodic-orbit machinery.
long fix_neg_graph_direct(const InducedMap& f, int n, long budget);

// Lefschetz zeta function: exact closed form det(Id - z f_*1) / det(Id - z
// f_*0) and its truncated expansion.
struct LefschetzZeta {
  std::vector<Rational> numerator, denominator;
  TruncatedSeries series;
  LefschetzZeta(int degree) : series(degree) {}
};
LefschetzZeta zeta_lefschetz(const InducedMap& f, int degree);

// zeta^- from explicit counts (feasible degrees only).
TruncatedSeries zeta_minus_direct(const InducedMap& f, int degree, long budget, int horizon);
// zeta^- through the determinant identity L D^{-1} exp(2 sum #P cap
// Fix^-(f^n) z^n / n); any degree.
TruncatedSeries zeta_minus(const InducedMap& f, int degree, int horizon);
TruncatedSeries zeta_mt(const InducedMap& f, int degree, int horizon);

// H(z) = exp sum (2 #P cap Fix^-(f^n) - #P cap Fix(f^n)) z^n / n.
TruncatedSeries correction_factor_H(const InducedMap& f, int degree, int horizon);

struct EntropyReport {
  double h_kneading = 0.0;
  bool kneading_root_found = false;
  bool kneading_stable = true;
  double kneading_root_modulus = 0.0;
  double kneading_root_residual = 0.0;
  double h_laps = 0.0;
  double h_variation = 0.0;
  double h_per_neg = 0.0;
  double h_hom = 0.0;
  double h_max = 0.0;  // max{h_per_neg, h_hom}
  int window_lo = 0, window_hi = 0;
  bool theorem1_ok = false;
  double tol_root = 0.0, tol_fit = 0.0;
  std::vector<std::string> notes;
};

EntropyReport entropy(const InducedMap& f, const RunConfig& config);

// Exact #Fix(f^n) for n = 1..n_max; requires every slope-1 lap to miss the
// diagonal.
std::vector<long> artin_mazur_oracle(const InducedMap& f, int n_max, long budget);

}  // namespace knead

#endif
