// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "knead/appendix_selftest.hpp"
#include "knead/error.hpp"
#include "knead/kneading.hpp"
#include "knead/report.hpp"
#include "knead/roots.hpp"
#include "knead/spectra.hpp"

using namespace knead;

namespace {

constexpr double kLog2 = 0.6931471805599453;
constexpr double kLogGolden = 0.48121182505960347;
constexpr double kInvGolden = 0.6180339887498949;
constexpr long kBudget = 2'000'000;

Rational q(const std::string& s) { return parse_rational(s); }

std::string maps_dir() { return KNEAD_MAPS_DIR; }

MapDefinition load(const std::string& name) { return parse_map_file(maps_dir() + "/" + name + ".json"); }

std::vector<std::string> corpus_names() {
  return {"circle_doubling", "circle_flip",     "contraction",      "drift_contraction",
          "golden_tent",     "identity_segment", "tent",             "tent_circle_invalid",
          "two_circles_swap", "wedge_fibonacci"};
}

struct Criterion {
  int number;
  std::string label;
  std::function<bool(std::string&)> run;
};

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

bool criterion_circle_doubling(std::string& why) {
  RunConfig config;  // degree 64, n_max 12
  InducedMap induced = load("circle_doubling").build_induced();
  EntropyReport er = entropy(induced, config);
  if (!near(er.h_kneading, kLog2, 1e-3)) return why = "h_kneading off log 2", false;
  if (!near(er.h_laps, kLog2, 1e-3)) return why = "h_laps off log 2", false;
  if (!near(er.h_hom, kLog2, 1e-3)) return why = "h_hom off log 2", false;
  if (er.h_per_neg != 0.0) return why = "h_per_neg not exactly 0", false;
  FixCounts counts = fix_counts(induced, 12, kBudget, config.orbit_horizon);
  for (long c : counts.fix_neg_graph)
    if (c != 0) return why = "nonzero Fix^- count", false;
  KneadingData kd = kneading_matrices(induced.map(), 64);
  if (!(kd.D == TruncatedSeries::from_poly({q("1"), q("-2")}, 64))) return why = "D(z) != 1-2z", false;
  if (!er.theorem1_ok) return why = "max formula fails", false;
  return true;
}

bool criterion_tent(std::string& why) {
  RunConfig config;
  InducedMap induced = load("tent").build_induced();
  FixCounts counts = fix_counts(induced, 12, kBudget, config.orbit_horizon);
  for (int n = 1; n <= 12; ++n)
    if (counts.fix_neg_graph[static_cast<size_t>(n - 1)] != (1L << (n - 1)))
      return why = "Fix^-(f^n) != 2^{n-1} at n=" + std::to_string(n), false;
  KneadingData kd = kneading_matrices(induced.map(), 64);
  if (!(kd.D == TruncatedSeries::from_poly({q("1"), q("-2")}, 64))) return why = "D(z) != 1-2z", false;
  if (!(kd.L == TruncatedSeries::one(64))) return why = "L(z) != 1", false;
  TruncatedSeries mt = zeta_mt(induced, 64, config.orbit_horizon);
  TruncatedSeries closed = TruncatedSeries::from_poly({q("1"), q("-1")}, 64) *
                           inverse(TruncatedSeries::from_poly({q("1"), q("-2")}, 64));
  if (!(mt == closed)) return why = "zeta^MT != (1-z)/(1-2z) to degree 64", false;
  EntropyReport er = entropy(induced, config);
  for (double h : {er.h_kneading, er.h_laps, er.h_variation, er.h_per_neg})
    if (!near(h, kLog2, 1e-3)) return why = "an entropy route misses log 2", false;
  return true;
}

bool criterion_golden(std::string& why) {
  RunConfig config;
  InducedMap induced = load("golden_tent").build_induced();
  EntropyReport er = entropy(induced, config);
  if (!near(er.h_kneading, kLogGolden, 5e-3)) return why = "h_kneading off log golden ratio", false;
  if (!near(er.h_kneading, er.h_laps, 5e-2)) return why = "h_kneading and h_laps disagree", false;
  auto root = smallest_root_in_disk(kneading_matrices(induced.map(), 64).D, 1.0, config.tol_root);
  if (!root) return why = "kneading root missing", false;
  if (!near(root->modulus, kInvGolden, 1e-6)) return why = "kneading root off 1/golden", false;
  return true;
}

bool criterion_wedge(std::string& why) {
  RunConfig config;
  InducedMap induced = load("wedge_fibonacci").build_induced();
  EntropyReport er = entropy(induced, config);
  if (!near(er.h_hom, kLogGolden, 1e-9)) return why = "h_hom != log golden ratio", false;
  if (!near(er.h_kneading, std::max(er.h_per_neg, er.h_hom), 5e-3))
    return why = "max formula off beyond 5e-3", false;
  return true;
}

bool criterion_identity_suite(std::string& why) {
  for (const auto& name : corpus_names()) {
    MapDefinition def = load(name);
    if (def.expected.invalid) continue;
    InducedMap induced = def.build_induced();
    const PMMap& F = induced.map();

    TraceIdentityReport traces = trace_identity_check(F, 10, 20, kBudget);
    if (!traces.ok) return why = name + ": trace identity fails at n=" + std::to_string(traces.first_bad_n), false;

    SeriesIdentityReport t9 = theorem_t9_check(F, 20, kBudget);
    if (!t9.ok) return why = name + ": L/D identity fails at degree " + std::to_string(t9.first_mismatch), false;

    FixCounts counts = fix_counts(induced, 8, kBudget, 256);
    for (int n = 1; n <= 8; ++n)
      if (fix_neg_graph_direct(induced, n, kBudget) != counts.fix_neg_graph[static_cast<size_t>(n - 1)])
        return why = name + ": count decomposition fails at n=" + std::to_string(n), false;

    TruncatedSeries mt_direct =
        zeta_minus_direct(induced, 20, kBudget, 256) * inverse(zeta_lefschetz(induced, 20).series);
    TruncatedSeries h = correction_factor_H(induced, 20, 256);
    if (first_mismatch(mt_direct * kneading_matrices(F, 20).D, h, 20) >= 0)
      return why = name + ": zeta^MT D != H", false;

    LefschetzZeta zl = zeta_lefschetz(induced, 20);
    RationalMatrix f0 = induced.h0_matrix();
    RationalMatrix p0 = RationalMatrix::identity(f0.rows());
    RationalMatrix p1 = RationalMatrix::identity(induced.h1_matrix().rows());
    TruncatedSeries a(20);
    for (int n = 1; n <= 20; ++n) {
      p0 = p0 * f0;
      p1 = p1 * induced.h1_matrix();
      a.at(n) = (p0.trace() - p1.trace()) / Rational(n);
    }
    if (!(zl.series == exp(a))) return why = name + ": Lefschetz routes disagree", false;
  }
  return true;
}

bool criterion_appendix(std::string& why) {
  SelftestReport self = appendix_selftest(20250811, 50, 10, 32);
  if (self.trace_failures != 0)
    return why = std::to_string(self.trace_failures) + " trace mismatches vs the dense oracle", false;
  if (self.duality_failures != 0)
    return why = std::to_string(self.duality_failures) + " det/trace duality failures", false;
  for (const auto& name : corpus_names()) {
    MapDefinition def = load(name);
    if (def.expected.invalid) continue;
    InducedMap induced = def.build_induced();
    MultiplicativityReport mult =
        check_multiplicativity(alpha_pair(induced), unsigned_pair(induced.map()), beta_pair(induced), 32);
    if (!mult.equal)
      return why = name + ": factorization fails at degree " + std::to_string(mult.first_mismatch), false;
  }
  return true;
}

bool criterion_negative_controls(std::string& why) {
  try {
    load("tent_circle_invalid").build_induced();
    return why = "tent + circle gluing was accepted", false;
  } catch (const Error& err) {
    if (err.code() != Errc::inconsistent_gluing) return why = "wrong diagnostic for tent + circle", false;
  }
  try {
    PMMap::validate(Omega({{q("0"), q("1")}}), {q("0"), q("1")}, {{q("0"), q("1/2")}});
    return why = "slope-0 branch was accepted", false;
  } catch (const Error& err) {
    if (err.code() != Errc::non_monotone_branch) return why = "wrong diagnostic for slope 0", false;
  }
  InducedMap identity = load("identity_segment").build_induced();
  try {
    artin_mazur_oracle(identity, 4, kBudget);
    return why = "diagonal slope-1 lap not flagged", false;
  } catch (const Error& err) {
    if (err.code() != Errc::infinite_fixed_set) return why = "wrong diagnostic for the diagonal lap", false;
  }
  RunConfig config;
  KneadingData kd = kneading_matrices(identity.map(), 64);
  if (!(kd.D == TruncatedSeries::from_poly({q("1"), q("-1")}, 64))) return why = "D of the segment", false;
  TruncatedSeries mt = zeta_mt(identity, 32, config.orbit_horizon);
  if (!(mt == TruncatedSeries::from_poly({q("1"), q("-1")}, 32))) return why = "zeta^MT of the segment", false;
  EntropyReport er = entropy(identity, config);
  if (er.h_kneading != 0.0 || er.h_laps != 0.0) return why = "segment entropy not zero", false;
  return true;
}

bool criterion_performance(std::string& why) {
  using clock = std::chrono::steady_clock;

  auto start = clock::now();
  for (const auto& name : corpus_names()) {
    MapDefinition def = load(name);
    if (def.expected.invalid) continue;
    PMMap f = def.build_map();
    if (static_cast<int>(f.branches().size()) > 8) continue;
    long count = 0;
    scan_laps(f, 14, kBudget, [&](const Lap& lap) {
      if (lap.level == 14) ++count;
    });
    if (count < 1) return why = name + ": empty level", false;
  }
  double laps_seconds = std::chrono::duration<double>(clock::now() - start).count();
  if (laps_seconds >= 10.0) return why = "lap enumeration to n=14 took " + std::to_string(laps_seconds) + " s", false;

  start = clock::now();
  std::vector<MapDefinition> defs;
  for (const auto& name : corpus_names()) defs.push_back(load(name));
  CommandResult verify = run_command("verify", defs, RunConfig{});
  double verify_seconds = std::chrono::duration<double>(clock::now() - start).count();
  if (verify.exit_code != 0) return why = "verify over the corpus failed", false;
  if (verify_seconds >= 60.0) return why = "verify took " + std::to_string(verify_seconds) + " s", false;
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "circle doubling: entropies log 2, D = 1-2z, max formula, zero Fix^-", nullptr},
      {2, "tent: exact Fix^- table, D and L, zeta^MT to degree 64, entropy routes", nullptr},
      {3, "golden tent: kneading root and lap growth at the golden ratio", nullptr},
      {4, "wedge of circles: homology entropy and the max formula", nullptr},
      {5, "identity suite: traces, L/D, count decomposition, zeta^MT D = H, Lefschetz routes", nullptr},
      {6, "appendix: dense-oracle traces, det/trace duality, factorization", nullptr},
      {7, "negative controls: fold, slope 0, diagonal segment", nullptr},
      {8, "performance: laps to n=14 and full verify", nullptr},
  };
  criteria[0].run = criterion_circle_doubling;
  criteria[1].run = criterion_tent;
  criteria[2].run = criterion_golden;
  criteria[3].run = criterion_wedge;
  criteria[4].run = criterion_identity_suite;
  criteria[5].run = criterion_appendix;
  criteria[6].run = criterion_negative_controls;
  criteria[7].run = criterion_performance;

  const double limits[8] = {1.0, 5.0, 0, 0, 0, 0, 0, 0};
  int failures = 0;
  for (const auto& criterion : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string why;
    bool ok = false;
    try {
      ok = criterion.run(why);
    } catch (const Error& err) {
      why = err.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    double limit = limits[criterion.number - 1];
    if (ok && limit > 0 && seconds >= limit) {
      ok = false;
      why = "runtime " + std::to_string(seconds) + " s exceeds " + std::to_string(limit) + " s";
    }
    if (!ok) ++failures;
    std::printf("%s criterion-%d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", criterion.number,
                criterion.label.c_str(), seconds, why.empty() ? "" : " -- ", why.c_str());
  }
  return failures == 0 ? 0 : 1;
}
