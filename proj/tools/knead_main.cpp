#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "knead/report.hpp"

namespace {

int run(const std::string& command, const std::vector<std::string>& files, const knead::RunConfig& config,
        const std::string& output) {
  std::vector<knead::MapDefinition> defs;
  for (const auto& path : files) {
    try {
      defs.push_back(knead::parse_map_file(path));
    } catch (const knead::Error& err) {
      std::cerr << err.what() << "\n";
      return 2;
    }
  }
  knead::CommandResult result;
  try {
    result = knead::run_command(command, defs, config);
  } catch (const knead::Error& err) {
    std::cerr << err.what() << "\n";
    return 2;
  }
  std::string text = knead::render_report(result.report, config.format);
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output);
    if (!out) {
      std::cerr << "cannot write " << output << "\n";
      return 2;
    }
    out << text;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kneading-theory toolkit for piecewise monotone graph maps"};
  app.require_subcommand(1);

  knead::RunConfig config;
  std::string output;
  app.add_option("--degree", config.degree, "series truncation degree")->capture_default_str();
  app.add_option("-n,--n,--max-iter", config.n_max, "maximum iterate for counting tables")
      ->capture_default_str();
  app.add_option("--budget", config.lap_budget, "lap budget per iterate")->capture_default_str();
  app.add_option("--horizon", config.orbit_horizon, "orbit horizon for periodicity searches")
      ->capture_default_str();
  app.add_option("--tolerance", config.tol_root, "tolerance for root-based comparisons")->capture_default_str();
  app.add_option("--fit-tolerance", config.tol_fit, "tolerance for growth-rate fits")->capture_default_str();
  app.add_option("--format", config.format, "output format: json|csv|text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--seed", config.seed, "seed for randomized self-tests")->capture_default_str();
  app.add_option("--jobs", config.jobs, "parallel map jobs")->capture_default_str();
  app.add_option("-o,--output", output, "write the report to a file instead of stdout");

  struct Sub {
    const char* name;
    const char* help;
    bool needs_files;
  };
  const Sub subs[] = {
      {"check", "validate map definitions and report the glued graph", true},
      {"laps", "lap counts and variation per iterate", true},
      {"fix", "fixed-point count tables", true},
      {"kneading", "dump M(z), N(z), D(z), L(z)", true},
      {"zeta", "dump the zeta functions and the correction factor H", true},
      {"entropy", "entropy estimates and the max-formula report", true},
      {"verify", "run every identity check; nonzero exit on violation", true},
      {"appendix-selftest", "randomized finite-rank pair property suite", false},
  };
  std::map<std::string, std::vector<std::string>> file_args;
  for (const auto& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    cmd->fallthrough();
    auto* opt = cmd->add_option("files", file_args[sub.name], "map definition files");
    if (sub.needs_files) opt->required()->check(CLI::ExistingFile);
  }

  CLI11_PARSE(app, argc, argv);
  std::string command = app.get_subcommands().front()->get_name();
  return run(command, file_args[command], config, output);
}
