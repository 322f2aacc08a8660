#ifndef GREENBALL_TOOLS_SUITES_HPP_
#define GREENBALL_TOOLS_SUITES_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "report.hpp"

namespace greenball_cli {

/// Names of every runnable suite, in the order `all` executes them.
const std::vector<std::string>& suite_names();

/// The embedded defaults: one JSON object per suite name.  A user config is
/// merged over this, so every suite runs with no config at all.
nlohmann::json default_config();

/// Runs one suite with its effective config section.  `level_override` and
/// `seed_override` (from --level / --seed) replace the section's own values.
/// The returned report has rows, parameters, and pass filled in; the caller
/// stamps runtime.
VerificationReport run_suite(const std::string& name,
                             const nlohmann::json& section,
                             std::optional<int> level_override,
                             std::optional<std::uint64_t> seed_override);

}  // namespace greenball_cli

#endif  // GREENBALL_TOOLS_SUITES_HPP_
