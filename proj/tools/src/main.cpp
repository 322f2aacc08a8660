// greenball — command-line verification harness for the greenball library.
//
// Usage: greenball <command> [--config file.json] [--out file] [--format
// csv|json] [--level N] [--seed N].  Commands are the suite names listed by
// suite_names() plus "all".  Exit status: 0 when every verification row
// passes, 1 when any row fails, 2 on usage or configuration errors.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "report.hpp"
#include "suites.hpp"

namespace {

using greenball_cli::ReportRow;
using greenball_cli::VerificationReport;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string known_commands() {
  std::string s;
  for (const std::string& name : greenball_cli::suite_names()) {
    s += name;
    s += ", ";
  }
  s += "all";
  return s;
}

long long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"greenball: numerical verification suites for the ball "
               "representation formula, mollification, and almost-periodic "
               "fields"};
  std::string command;
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  std::optional<int> level_override;
  std::optional<std::uint64_t> seed_override;

  app.add_option("command", command,
                 "suite to run (" + known_commands() + ")")
      ->required();
  app.add_option("--config", config_path,
                 "JSON config file; values merge over the built-in defaults");
  app.add_option("--out", out_path, "write the report here (default stdout)");
  app.add_option("--format", format, "report format (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--level", level_override,
                 "override every suite's quadrature level");
  app.add_option("--seed", seed_override, "override every suite's RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints CLI11's message
    return code == 0 ? kExitPass : kExitUsage;
  }

  // Validate the command before touching any config.
  const std::vector<std::string>& names = greenball_cli::suite_names();
  const bool run_all = command == "all";
  if (!run_all &&
      std::find(names.begin(), names.end(), command) == names.end()) {
    std::cerr << "error: unknown command '" << command
              << "' (expected one of: " << known_commands() << ")\n";
    return kExitUsage;
  }

  // Effective config: built-in defaults with the user's file merged on top.
  json config = greenball_cli::default_config();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      std::cerr << "error: cannot read config file '" << config_path << "'\n";
      return kExitUsage;
    }
    json user;
    try {
      in >> user;
    } catch (const json::exception& e) {
      std::cerr << "error: cannot parse config file '" << config_path
                << "': " << e.what() << "\n";
      return kExitUsage;
    }
    if (!user.is_object()) {
      std::cerr << "error: config file '" << config_path
                << "' must hold a JSON object with one section per command\n";
      return kExitUsage;
    }
    config.merge_patch(user);
  }

  VerificationReport report;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (run_all) {
      report.command = "all";
      report.pass = true;
      for (const std::string& name : names) {
        const auto t1 = std::chrono::steady_clock::now();
        VerificationReport sub = greenball_cli::run_suite(
            name, config.at(name), level_override, seed_override);
        sub.runtime_ms = ms_since(t1);
        std::cerr << "[" << name << "] " << (sub.pass ? "pass" : "FAIL")
                  << " (" << sub.rows.size() << " rows, " << sub.runtime_ms
                  << " ms)\n";
        for (ReportRow& row : sub.rows) {
          row.input = name + ": " + row.input;
          report.rows.push_back(std::move(row));
        }
        for (const auto& [key, value] : sub.parameters) {
          report.parameters[name + "." + key] = value;
        }
        report.pass = report.pass && sub.pass;
      }
    } else {
      report = greenball_cli::run_suite(command, config.at(command),
                                        level_override, seed_override);
      std::cerr << "[" << command << "] " << (report.pass ? "pass" : "FAIL")
                << " (" << report.rows.size() << " rows)\n";
    }
  } catch (const json::exception& e) {
    std::cerr << "error: invalid config value: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  report.runtime_ms = ms_since(t0);

  const std::string text = format == "csv" ? greenball_cli::to_csv(report)
                                           : greenball_cli::to_json(report);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write output file '" << out_path << "'\n";
      return kExitUsage;
    }
    out << text;
    out.flush();
    if (!out.good()) {
      std::cerr << "error: cannot write output file '" << out_path << "'\n";
      return kExitUsage;
    }
  }
  return report.pass ? kExitPass : kExitVerificationFailure;
}
