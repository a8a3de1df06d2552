#include <doctest.h>

#include <random>

#include "knead/appendix_selftest.hpp"
#include "knead/error.hpp"
#include "knead/kneading.hpp"
#include "knead/report.hpp"
#include "knead/spectra.hpp"
#include "test_util.hpp"

using namespace knead;
using namespace knead::test;

namespace {

// Continuous piecewise-affine self-map of [0,1] built by interpolating
// random rational values at random critical points; always induces a valid
// interval map.
PMMap random_continuous_interval_map(std::mt19937_64& rng, bool circle_compatible) {
  std::uniform_int_distribution<int> count(1, 4);
  std::uniform_int_distribution<long> grid(0, 12);
  int branches = count(rng);

  std::vector<Rational> critical{q("0"), q("1")};
  while (static_cast<int>(critical.size()) < branches + 1) {
    Rational c = rat(1 + grid(rng) % 11, 12);
    bool fresh = true;
    for (const auto& existing : critical) fresh = fresh && existing != c;
    if (fresh) critical.push_back(c);
  }
  std::sort(critical.begin(), critical.end());

  std::vector<Rational> values(critical.size());
  for (size_t i = 0; i < values.size(); ++i) values[i] = rat(grid(rng), 12);
  if (circle_compatible) {
    // endpoint values in {0, 1} so the glued class maps to itself
    values.front() = rat(grid(rng) % 2);
    values.back() = rat(grid(rng) % 2);
  }
  for (size_t i = 1; i < values.size(); ++i)
    if (values[i] == values[i - 1]) values[i] = values[i - 1] == 1 ? rat(11, 12) : values[i - 1] + rat(1, 12);

  std::vector<std::pair<Rational, Rational>> rules;
  for (size_t i = 0; i + 1 < critical.size(); ++i) {
    Rational slope = (values[i + 1] - values[i]) / (critical[i + 1] - critical[i]);
    rules.emplace_back(slope, values[i] - slope * critical[i]);
  }
  return PMMap::validate(Omega({{q("0"), q("1")}}), critical, rules);
}

void check_identities(const InducedMap& induced, const std::string& label) {
  const PMMap& F = induced.map();
  const long budget = 200000;
  const int degree = 6;

  TraceIdentityReport traces = trace_identity_check(F, degree, 8, budget);
  INFO(label);
  CHECK(traces.ok);

  SeriesIdentityReport t9 = theorem_t9_check(F, degree, budget);
  CHECK(t9.ok);

  FixCounts counts = fix_counts(induced, degree, budget, 64);
  for (int n = 1; n <= degree; ++n)
    CHECK(fix_neg_graph_direct(induced, n, budget) == counts.fix_neg_graph[static_cast<size_t>(n - 1)]);

  TruncatedSeries mt_direct =
      zeta_minus_direct(induced, degree, budget, 64) * inverse(zeta_lefschetz(induced, degree).series);
  TruncatedSeries h = correction_factor_H(induced, degree, 64);
  CHECK(first_mismatch(mt_direct * kneading_matrices(F, degree).D, h, degree) < 0);

  MultiplicativityReport mult =
      check_multiplicativity(alpha_pair(induced), unsigned_pair(F), beta_pair(induced), 16);
  CHECK(mult.equal);
}

}  // namespace

TEST_CASE("the identity suite holds on random continuous interval maps") {
  std::mt19937_64 rng(97531);
  int checked = 0;
  for (int round = 0; round < 30 && checked < 12; ++round) {
    PMMap f = random_continuous_interval_map(rng, false);
    try {
      check_identities(validate_induced(f, Gluing{}), "interval round " + std::to_string(round));
      ++checked;
    } catch (const Error& err) {
      if (err.code() != Errc::lap_budget_exceeded) throw;  // expansion too strong for the test budget
    }
  }
  CHECK(checked >= 8);
}

TEST_CASE("the identity suite holds on random continuous circle maps") {
  std::mt19937_64 rng(86420);
  int checked = 0;
  for (int round = 0; round < 80 && checked < 12; ++round) {
    PMMap f = random_continuous_interval_map(rng, true);
    try {
      check_identities(validate_induced(f, circle_gluing()), "circle round " + std::to_string(round));
      ++checked;
    } catch (const Error& err) {
      // folds at the glued class and over-expanding maps are legal
      // generator output; skip them
      if (err.code() != Errc::inconsistent_gluing && err.code() != Errc::lap_budget_exceeded) throw;
    }
  }
  CHECK(checked >= 8);
}

TEST_CASE("verify flags a negative control that validates") {
  RunConfig config;
  config.n_max = 6;
  config.degree = 8;
  MapDefinition def = load_map("circle_doubling");
  def.expected = ExpectedValues{};
  def.expected.invalid = "InconsistentGluing";
  CHECK(run_command("verify", {def}, config).exit_code == 1);
}
