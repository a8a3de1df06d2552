#include "knead/report.hpp"

#include <atomic>
#include <cmath>
#include <future>
#include <sstream>

#include "knead/appendix_selftest.hpp"
#include "knead/kneading.hpp"
#include "knead/roots.hpp"
#include "knead/spectra.hpp"

namespace knead {

using nlohmann::ordered_json;

nlohmann::ordered_json series_to_json(const TruncatedSeries& s) {
  ordered_json out = ordered_json::array();
  for (int n = 0; n <= s.degree(); ++n) out.push_back(to_string(s[n]));
  return out;
}

nlohmann::ordered_json poly_to_json(const std::vector<Rational>& coeffs) {
  ordered_json out = ordered_json::array();
  for (const auto& c : coeffs) out.push_back(to_string(c));
  return out;
}

namespace {

int exit_code_for(const Error& err) {
  if (err.code() == Errc::lap_budget_exceeded) return 3;
  if (err.code() == Errc::identity_violated) return 1;
  return 2;
}

ordered_json error_json(const Error& err) {
  return ordered_json{{"error", errc_name(err.code())}, {"message", err.what()}};
}

// Largest n <= n_max whose lap table fits the budget.
int feasible_window(const PMMap& f, int n_max, long budget) {
  for (int n = n_max; n >= 1; --n) {
    try {
      scan_laps(f, n, budget, [](const Lap&) {});
      return n;
    } catch (const Error& err) {
      if (err.code() != Errc::lap_budget_exceeded) throw;
    }
  }
  return 0;
}

ordered_json config_json(const RunConfig& c) {
  return ordered_json{{"degree", c.degree},       {"max_iter", c.n_max},
                      {"lap_budget", c.lap_budget}, {"orbit_horizon", c.orbit_horizon},
                      {"tol_root", c.tol_root},   {"tol_fit", c.tol_fit},
                      {"seed", c.seed}};
}

ordered_json graph_json(const InducedMap& f) {
  const GluedGraph& g = f.graph();
  ordered_json classes = ordered_json::array();
  for (const auto& cls : g.classes()) classes.push_back(to_strings(cls));
  ordered_json h1 = ordered_json::array();
  for (int i = 0; i < f.h1_matrix().rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < f.h1_matrix().cols(); ++j) row.push_back(to_string(f.h1_matrix().at(i, j)));
    h1.push_back(row);
  }
  return ordered_json{{"edges", g.num_edges()},
                      {"classes", classes},
                      {"components", g.num_components()},
                      {"vertices", g.vertices()},
                      {"h1_rank", g.h1_rank()},
                      {"h1_matrix", h1},
                      {"h0_map", f.h0_map()}};
}

ordered_json entropy_json(const EntropyReport& r) {
  ordered_json out;
  out["h_kneading"] = r.h_kneading;
  out["kneading_root"] = ordered_json{{"found", r.kneading_root_found},
                                      {"stable", r.kneading_stable},
                                      {"modulus", r.kneading_root_modulus},
                                      {"residual", r.kneading_root_residual}};
  out["h_laps"] = r.h_laps;
  out["h_variation"] = r.h_variation;
  out["h_per_neg"] = r.h_per_neg;
  out["h_hom"] = r.h_hom;
  out["h_max"] = r.h_max;
  out["window"] = ordered_json{{"from", r.window_lo}, {"to", r.window_hi}};
  out["theorem1_ok"] = r.theorem1_ok;
  out["tolerances"] = ordered_json{{"root", r.tol_root}, {"fit", r.tol_fit}};
  out["notes"] = r.notes;
  return out;
}

ordered_json check_entry(const std::string& name, bool ok, const std::string& detail) {
  return ordered_json{{"check", name}, {"ok", ok}, {"detail", detail}};
}

// The verify pipeline for one map: every identity of the paper that the
// build can test mechanically, plus the expected-value regression block.
ordered_json verify_map(const MapDefinition& def, const RunConfig& config, int* exit_code) {
  ordered_json checks = ordered_json::array();
  bool violated = false;

  InducedMap induced = def.build_induced();
  const PMMap& F = induced.map();

  int n_w = feasible_window(F, config.n_max, config.lap_budget);
  if (n_w < 1) raise(Errc::lap_budget_exceeded, "no feasible lap window");

  {
    TraceIdentityReport tr = trace_identity_check(F, n_w, std::max(n_w, config.n_max), config.lap_budget);
    checks.push_back(check_entry("trace_identities", tr.ok,
                                 tr.ok ? "lap sums match determinant traces for n <= " + std::to_string(n_w)
                                       : "first failure at n = " + std::to_string(tr.first_bad_n)));
    violated |= !tr.ok;
  }
  {
    SeriesIdentityReport t9 = theorem_t9_check(F, n_w, config.lap_budget);
    checks.push_back(check_entry("theorem_t9", t9.ok,
                                 t9.ok ? "exp(2 sum Fix^- z^n/n) = L/D to degree " + std::to_string(n_w)
                                       : "first mismatch at degree " + std::to_string(t9.first_mismatch)));
    violated |= !t9.ok;
  }
  {
    FixCounts counts = fix_counts(induced, n_w, config.lap_budget, config.orbit_horizon);
    bool ok = true;
    int bad = -1;
    for (int n = 1; n <= std::min(n_w, 8); ++n) {
      long direct = fix_neg_graph_direct(induced, n, config.lap_budget);
      if (direct != counts.fix_neg_graph[static_cast<size_t>(n - 1)]) {
        ok = false;
        bad = n;
        break;
      }
    }
    checks.push_back(check_entry("count_decomposition", ok,
                                 ok ? "direct Fix^-(f^n) equals lift + P-correction"
                                    : "mismatch at n = " + std::to_string(bad)));
    violated |= !ok;
  }
  {
    TruncatedSeries mt_direct = zeta_minus_direct(induced, n_w, config.lap_budget, config.orbit_horizon) *
                                inverse(zeta_lefschetz(induced, n_w).series);
    KneadingData kd = kneading_matrices(F, n_w);
    TruncatedSeries h = correction_factor_H(induced, n_w, config.orbit_horizon);
    int mismatch = first_mismatch(mt_direct * kd.D, h, n_w);
    bool no_root = true;
    std::string root_note;
    try {
      if (auto root = smallest_root_in_disk(h, 1.0 - config.tol_root, config.tol_root)) {
        no_root = false;
        root_note = "; H vanishes at modulus " + std::to_string(root->modulus);
      }
    } catch (const Error&) {
      root_note = "; H root stability inconclusive";
    }
    bool ok = mismatch < 0 && no_root;
    checks.push_back(check_entry("theorem_t10", ok,
                                 ok ? "zeta^MT D = H to degree " + std::to_string(n_w)
                                    : "first mismatch at degree " + std::to_string(mismatch) + root_note));
    violated |= !ok;
  }
  {
    LefschetzZeta zl = zeta_lefschetz(induced, config.degree);
    RationalMatrix f0 = induced.h0_matrix();
    const RationalMatrix& f1 = induced.h1_matrix();
    TruncatedSeries a(config.degree);
    RationalMatrix p0 = RationalMatrix::identity(f0.rows());
    RationalMatrix p1 = RationalMatrix::identity(f1.rows());
    for (int n = 1; n <= config.degree; ++n) {
      p0 = p0 * f0;
      p1 = p1 * f1;
      a.at(n) = (p0.trace() - p1.trace()) / Rational(n);
    }
    bool ok = equal_to_degree(zl.series, exp(a), config.degree);
    checks.push_back(check_entry("lefschetz_routes", ok,
                                 ok ? "closed form matches exp-trace expansion to degree " +
                                          std::to_string(config.degree)
                                    : "closed form and exp-trace expansion disagree"));
    violated |= !ok;
  }
  {
    EntropyReport er = entropy(induced, config);
    bool ok = er.kneading_stable ? er.theorem1_ok : true;
    std::ostringstream detail;
    detail << "h_kneading=" << er.h_kneading << " h_per_neg=" << er.h_per_neg << " h_hom=" << er.h_hom;
    checks.push_back(check_entry("theorem_t1", ok, detail.str()));
    violated |= !ok;
  }
  {
    MultiplicativityReport mult = check_multiplicativity(alpha_pair(induced), unsigned_pair(F),
                                                         beta_pair(induced), std::min(32, config.degree));
    checks.push_back(check_entry("appendix_factorization", mult.equal,
                                 mult.equal ? "L = D_alpha D_beta to degree " +
                                                  std::to_string(std::min(32, config.degree))
                                            : "first mismatch at degree " + std::to_string(mult.first_mismatch)));
    violated |= !mult.equal;
  }

  // data-driven regression block
  const ExpectedValues& exp_vals = def.expected;
  if (exp_vals.entropy || exp_vals.h_hom || exp_vals.h_per_neg || !exp_vals.fix_neg.empty() ||
      !exp_vals.kneading_determinant.empty() || !exp_vals.homological_determinant.empty()) {
    EntropyReport er = entropy(induced, config);
    bool ok = true;
    std::string detail = "expected block matches";
    if (exp_vals.entropy && std::fabs(er.h_kneading - *exp_vals.entropy) > config.tol_root) {
      ok = false;
      detail = "entropy deviates from expected";
    }
    if (ok && exp_vals.h_hom && std::fabs(er.h_hom - *exp_vals.h_hom) > config.tol_root) {
      ok = false;
      detail = "h_hom deviates from expected";
    }
    if (ok && exp_vals.h_per_neg && std::fabs(er.h_per_neg - *exp_vals.h_per_neg) > config.tol_fit) {
      ok = false;
      detail = "h_per_neg deviates from expected";
    }
    if (ok && !exp_vals.fix_neg.empty()) {
      int upto = std::min(n_w, static_cast<int>(exp_vals.fix_neg.size()));
      FixCounts counts = fix_counts(induced, upto, config.lap_budget, config.orbit_horizon);
      for (int n = 1; n <= upto; ++n)
        if (counts.fix_neg_graph[static_cast<size_t>(n - 1)] != exp_vals.fix_neg[static_cast<size_t>(n - 1)]) {
          ok = false;
          detail = "Fix^- table deviates at n = " + std::to_string(n);
          break;
        }
    }
    if (ok && (!exp_vals.kneading_determinant.empty() || !exp_vals.homological_determinant.empty())) {
      KneadingData kd = kneading_matrices(F, config.degree);
      if (!exp_vals.kneading_determinant.empty() &&
          !(kd.D == TruncatedSeries::from_poly(exp_vals.kneading_determinant, config.degree))) {
        ok = false;
        detail = "kneading determinant deviates from expected polynomial";
      }
      if (ok && !exp_vals.homological_determinant.empty() &&
          !(kd.L == TruncatedSeries::from_poly(exp_vals.homological_determinant, config.degree))) {
        ok = false;
        detail = "homological determinant deviates from expected polynomial";
      }
    }
    checks.push_back(check_entry("expected_values", ok, detail));
    violated |= !ok;
  }

  if (violated && *exit_code < 1) *exit_code = 1;
  return ordered_json{{"map", def.name}, {"ok", !violated}, {"window", n_w}, {"checks", checks}};
}

ordered_json run_one(const std::string& command, const MapDefinition& def, const RunConfig& config,
                     int* exit_code) {
  try {
    if (command == "check") {
      InducedMap induced = def.build_induced();
      return ordered_json{{"map", def.name}, {"valid", true}, {"graph", graph_json(induced)}};
    }
    if (command == "laps") {
      PMMap f = def.build_map();
      int n_w = feasible_window(f, config.n_max, config.lap_budget);
      std::vector<LapStats> stats = lap_statistics(f, n_w, config.lap_budget);
      ordered_json rows = ordered_json::array();
      for (int n = 1; n <= n_w; ++n) {
        const LapStats& s = stats[static_cast<size_t>(n - 1)];
        rows.push_back(ordered_json{{"n", n},
                                    {"lap_count", s.lap_count},
                                    {"variation", to_string(s.variation)}});
      }
      return ordered_json{{"map", def.name}, {"window", n_w}, {"levels", rows}};
    }
    if (command == "fix") {
      InducedMap induced = def.build_induced();
      int n_w = feasible_window(induced.map(), config.n_max, config.lap_budget);
      FixCounts counts = fix_counts(induced, n_w, config.lap_budget, config.orbit_horizon);
      ordered_json rows = ordered_json::array();
      for (int n = 1; n <= n_w; ++n) {
        size_t i = static_cast<size_t>(n - 1);
        rows.push_back(ordered_json{{"n", n},
                                    {"fix_neg_lift", counts.fix_neg_lift[i]},
                                    {"p_fix", counts.p_fix[i]},
                                    {"p_fix_neg", counts.p_fix_neg[i]},
                                    {"fix_neg", counts.fix_neg_graph[i]}});
      }
      return ordered_json{{"map", def.name}, {"window", n_w}, {"counts", rows}};
    }
    if (command == "kneading") {
      PMMap f = def.build_map();
      KneadingData kd = kneading_matrices(f, config.degree);
      ordered_json indices = ordered_json::array();
      for (const auto& idx : kd.indices)
        indices.push_back(ordered_json::array({to_string(idx.point), idx.side == Side::minus ? "-" : "+"}));
      auto matrix_json = [](const SeriesMatrix& m) {
        ordered_json rows = ordered_json::array();
        for (int i = 0; i < m.size(); ++i) {
          ordered_json row = ordered_json::array();
          for (int j = 0; j < m.size(); ++j) row.push_back(series_to_json(m.entry(i, j)));
          rows.push_back(row);
        }
        return rows;
      };
      return ordered_json{{"map", def.name},     {"indices", indices},
                          {"M", matrix_json(kd.M)}, {"N", matrix_json(kd.N)},
                          {"D", series_to_json(kd.D)}, {"L", series_to_json(kd.L)}};
    }
    if (command == "zeta") {
      InducedMap induced = def.build_induced();
      LefschetzZeta zl = zeta_lefschetz(induced, config.degree);
      TruncatedSeries mt = zeta_mt(induced, config.degree, config.orbit_horizon);
      RadiusEstimate rho = radius_estimate(mt);
      ordered_json radius = rho.at_least_one
                                ? ordered_json{{"at_least_one", true}}
                                : ordered_json{{"at_least_one", false}, {"value", rho.value}, {"band", rho.band}};
      return ordered_json{
          {"map", def.name},
          {"zeta_minus", series_to_json(zeta_minus(induced, config.degree, config.orbit_horizon))},
          {"zeta_lefschetz",
           ordered_json{{"numerator", poly_to_json(zl.numerator)},
                        {"denominator", poly_to_json(zl.denominator)},
                        {"series", series_to_json(zl.series)}}},
          {"zeta_mt", series_to_json(mt)},
          {"zeta_mt_radius", radius},
          {"correction_H", series_to_json(correction_factor_H(induced, config.degree, config.orbit_horizon))}};
    }
    if (command == "entropy") {
      InducedMap induced = def.build_induced();
      EntropyReport er = entropy(induced, config);
      return ordered_json{{"map", def.name}, {"entropy", entropy_json(er)}};
    }
    if (command == "verify") {
      try {
        ordered_json out = verify_map(def, config, exit_code);
        if (def.expected.invalid) {
          // a negative control that validated is itself a failure
          if (*exit_code < 1) *exit_code = 1;
          out["ok"] = false;
          out["checks"].push_back(check_entry("expected_invalid", false,
                                              "map validated but was expected to fail with " +
                                                  *def.expected.invalid));
        }
        return out;
      } catch (const Error& err) {
        if (def.expected.invalid) {
          bool matches = *def.expected.invalid == errc_name(err.code());
          if (!matches && *exit_code < 1) *exit_code = 1;
          return ordered_json{{"map", def.name},
                              {"ok", matches},
                              {"checks", ordered_json::array(
                                             {check_entry("expected_invalid", matches, err.what())})}};
        }
        throw;
      }
    }
    raise(Errc::semantic_error, "unknown command " + command);
  } catch (const Error& err) {
    if (def.expected.invalid && *def.expected.invalid == errc_name(err.code())) {
      return ordered_json{{"map", def.name}, {"valid", false}, {"expected_invalid", true},
                          {"error", errc_name(err.code())}, {"message", err.what()}};
    }
    int code = exit_code_for(err);
    if (*exit_code < code) *exit_code = code;
    ordered_json out = error_json(err);
    out["map"] = def.name;
    return out;
  }
}

}  // namespace

CommandResult run_command(const std::string& command, const std::vector<MapDefinition>& defs,
                          const RunConfig& config) {
  config.check();
  CommandResult result;
  result.report["schema"] = "knead-report/1";
  result.report["command"] = command;
  result.report["config"] = config_json(config);

  if (command == "appendix-selftest") {
    SelftestReport self = appendix_selftest(config.seed, 50, 10, 32);
    ordered_json maps = ordered_json::array();
    int code = 0;
    for (const auto& def : defs) {
      ordered_json entry = ordered_json{{"map", def.name}};
      try {
        InducedMap induced = def.build_induced();
        MultiplicativityReport mult = check_multiplicativity(alpha_pair(induced), unsigned_pair(induced.map()),
                                                             beta_pair(induced), std::min(32, config.degree));
        entry["factorization_ok"] = mult.equal;
        if (!mult.equal) code = std::max(code, 1);
      } catch (const Error& err) {
        if (!def.expected.invalid || *def.expected.invalid != errc_name(err.code())) {
          entry["error"] = errc_name(err.code());
          code = std::max(code, exit_code_for(err));
        } else {
          entry["skipped"] = "expected-invalid map";
        }
      }
      maps.push_back(entry);
    }
    result.report["random_pairs"] =
        ordered_json{{"count", self.pairs},
                     {"trace_failures", self.trace_failures},
                     {"duality_failures", self.duality_failures}};
    result.report["maps"] = maps;
    result.exit_code = self.ok() ? code : 1;
    return result;
  }

  std::vector<ordered_json> entries(defs.size());
  std::vector<int> codes(defs.size(), 0);
  if (config.jobs > 1 && defs.size() > 1) {
    std::vector<std::future<void>> futures;
    std::atomic<size_t> next{0};
    int width = std::min<int>(config.jobs, static_cast<int>(defs.size()));
    for (int w = 0; w < width; ++w) {
      futures.push_back(std::async(std::launch::async, [&]() {
        for (size_t i = next.fetch_add(1); i < defs.size(); i = next.fetch_add(1))
          entries[i] = run_one(command, defs[i], config, &codes[i]);
      }));
    }
    for (auto& f : futures) f.get();
  } else {
    for (size_t i = 0; i < defs.size(); ++i) entries[i] = run_one(command, defs[i], config, &codes[i]);
  }

  ordered_json maps = ordered_json::array();
  for (auto& entry : entries) maps.push_back(std::move(entry));
  result.report["maps"] = maps;
  for (int code : codes) result.exit_code = std::max(result.exit_code, code);
  return result;
}

namespace {

void flatten(const ordered_json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items())
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
  } else if (j.is_array()) {
    int i = 0;
    for (const auto& value : j) flatten(value, prefix + "[" + std::to_string(i++) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

}  // namespace

std::string render_report(const nlohmann::ordered_json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream out;
  if (format == "csv") {
    out << "key,value\n";
    for (const auto& [key, value] : rows) out << key << "," << value << "\n";
  } else {
    for (const auto& [key, value] : rows) out << key << " = " << value << "\n";
  }
  return out.str();
}

}  // namespace knead
