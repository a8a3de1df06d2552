#ifndef KNEAD_REPORT_HPP
#define KNEAD_REPORT_HPP

#include <json.hpp>

#include <string>
#include <vector>

#include "knead/config.hpp"
#include "knead/mapfile.hpp"
#include "knead/series.hpp"

namespace knead {

struct CommandResult {
  nlohmann::ordered_json report;
  int exit_code = 0;  // 0 ok, 1 identity violation, 2 input error, 3 budget exceeded
};

// Batch front door shared by the CLI and the tests: runs one subcommand
// over parsed map definitions.
CommandResult run_command(const std::string& command, const std::vector<MapDefinition>& defs,
                          const RunConfig& config);

std::string render_report(const nlohmann::ordered_json& report, const std::string& format);

nlohmann::ordered_json series_to_json(const TruncatedSeries& s);
nlohmann::ordered_json poly_to_json(const std::vector<Rational>& coeffs);

}  // namespace knead

#endif
