#include <doctest.h>

#include "knead/error.hpp"
#include "knead/report.hpp"
#include "test_util.hpp"

using namespace knead;
using namespace knead::test;

TEST_CASE("map files parse and reproduce the bundled lifts") {
  MapDefinition doubling = load_map("circle_doubling");
  CHECK(doubling.name == "circle_doubling");
  PMMap f = doubling.build_map();
  CHECK(f.critical_points() == std::vector<Rational>{q("0"), q("1/2"), q("1")});
  CHECK(doubling.expected.entropy.has_value());

  MapDefinition invalid = load_map("tent_circle_invalid");
  REQUIRE(invalid.expected.invalid.has_value());
  CHECK_THROWS_AS(invalid.build_induced(), Error);
}

TEST_CASE("parse diagnostics") {
  SUBCASE("zero denominator") {
    std::string text = R"({"intervals": [["0", "1/0"]], "critical_points": [], "branches": []})";
    try {
      parse_map_json(text, "inline");
      CHECK(false);
    } catch (const Error& err) {
      CHECK(err.code() == Errc::parse_error);
    }
  }
  SUBCASE("malformed json carries position information") {
    try {
      parse_map_json("{", "inline");
      CHECK(false);
    } catch (const Error& err) {
      CHECK(err.code() == Errc::parse_error);
    }
  }
  SUBCASE("slope zero surfaces as a semantic diagnostic from validation") {
    std::string text = R"({
      "intervals": [["0", "1"]],
      "critical_points": ["0", "1"],
      "branches": [{"slope": "0", "intercept": "1/2"}]
    })";
    MapDefinition def = parse_map_json(text, "inline");
    try {
      def.build_map();
      CHECK(false);
    } catch (const Error& err) {
      CHECK(err.code() == Errc::non_monotone_branch);
    }
  }
}

TEST_CASE("dump and re-parse is the identity on semantic content") {
  for (const auto& def : load_corpus()) {
    MapDefinition again = parse_map_json(dump_map(def), def.name);
    CHECK(again.name == def.name);
    CHECK(again.critical_points == def.critical_points);
    CHECK(again.branches == def.branches);
    CHECK(again.gluing.classes == def.gluing.classes);
    CHECK(again.expected.fix_neg == def.expected.fix_neg);
    CHECK(dump_map(again) == dump_map(def));
  }
}

TEST_CASE("reports are deterministic") {
  RunConfig config;
  config.n_max = 10;  // the h_per_neg fit needs a realistic window
  config.degree = 16;
  std::vector<MapDefinition> defs{load_map("circle_doubling"), load_map("golden_tent")};

  CommandResult first = run_command("verify", defs, config);
  CommandResult second = run_command("verify", defs, config);
  CHECK(first.exit_code == 0);
  CHECK(first.report.dump() == second.report.dump());

  CommandResult parallel_config = [&] {
    RunConfig wide = config;
    wide.jobs = 2;
    return run_command("verify", defs, wide);
  }();
  CHECK(parallel_config.report.dump() == first.report.dump());

  CommandResult self1 = run_command("appendix-selftest", {}, config);
  CommandResult self2 = run_command("appendix-selftest", {}, config);
  CHECK(self1.exit_code == 0);
  CHECK(self1.report.dump() == self2.report.dump());
}

TEST_CASE("exit codes") {
  RunConfig config;
  config.n_max = 6;
  config.degree = 16;

  SUBCASE("identity violation through a wrong expected block") {
    MapDefinition def = load_map("tent");
    def.expected.fix_neg = {7, 7, 7};
    CommandResult result = run_command("verify", {def}, config);
    CHECK(result.exit_code == 1);
  }
  SUBCASE("input error") {
    MapDefinition def = load_map("tent");
    def.critical_points = {q("1/2"), q("1")};  // boundary no longer critical
    CommandResult result = run_command("check", {def}, config);
    CHECK(result.exit_code == 2);
  }
  SUBCASE("budget exhaustion") {
    RunConfig tiny = config;
    tiny.lap_budget = 1;
    CommandResult result = run_command("laps", {load_map("tent")}, tiny);
    CHECK(result.exit_code == 3);
  }
  SUBCASE("expected-invalid maps do not fail verification") {
    CommandResult result = run_command("verify", {load_map("tent_circle_invalid")}, config);
    CHECK(result.exit_code == 0);
  }
}

TEST_CASE("config invariants") {
  RunConfig config;
  config.degree = 0;
  CHECK_THROWS_AS(config.check(), Error);
  config = RunConfig{};
  config.tol_root = 1.5;
  CHECK_THROWS_AS(config.check(), Error);
  config = RunConfig{};
  CHECK_NOTHROW(config.check());
}

TEST_CASE("kneading dump carries rational-string series") {
  RunConfig config;
  config.degree = 8;
  CommandResult result = run_command("kneading", {load_map("tent")}, config);
  const auto& map_report = result.report["maps"][0];
  CHECK(map_report["D"][0] == "1");
  CHECK(map_report["D"][1] == "-2");
  CHECK(map_report["L"][0] == "1");
  CHECK(map_report["L"][1] == "0");
  CHECK(map_report["M"].size() == 6);
  CHECK(map_report["M"][0][2][0] == "1");  // row (0,-), column (1/2,-), order 0
}
