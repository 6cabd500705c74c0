#pragma once

// Command-line front end for dtlab.  `run` is the whole program minus
// process plumbing, so tests can drive it with string streams.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dtlab/trials.hpp"

namespace dtlab::cli {

enum ExitCode : int { kPass = 0, kCriterionFailure = 1, kConfigError = 2, kNumericalAbort = 3 };

struct CommandResult {
  nlohmann::json report;
  std::optional<Table> table;
  bool pass = true;
};

/// Fills defaults and applies flag overrides; the returned JSON is the
/// canonical resolved config recorded in the manifest.
nlohmann::json resolve_config(const std::string& command, const nlohmann::json& file_config,
                              const nlohmann::json& overrides);

/// Runs a command on a resolved config.
CommandResult execute(const std::string& command, const nlohmann::json& config);

/// Serialized primary output: pretty JSON (trailing newline) or CSV.
std::string render(const CommandResult& result, const std::string& format);

/// argv without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtlab::cli
