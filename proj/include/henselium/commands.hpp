#pragma once

// Command execution shared by the command-line tool and scenario files.
// Every command produces one JSON report.

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "henselium/expression.hpp"

namespace henselium {

/// Exit codes: 0 ok, 1 negative verdict or failed expectation, 2 error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitError = 2;

struct CommandOutcome {
  nlohmann::json report;
  int exit_code = kExitOk;
};

/// Default session: variables s,t over Q.
Session default_session();

/// Runs one command given as arguments without the program name. Global
/// flags (--vars, --field, --prec, --horizon) update `session` for this and
/// later commands. Errors become {"error", "message"} reports.
CommandOutcome execute_command(const std::vector<std::string>& args, Session& session,
                               bool allow_run = true);

/// Runs a scenario: one command per line, '#' comments, "session ..." lines
/// and "expect <json-pointer> <json>" lines checked against the latest
/// report. The report is the array of command reports.
CommandOutcome run_scenario(std::string_view text, Session& session);

/// Resolves a scenario argument: an existing path, or the name of a bundled
/// scenario.
std::string resolve_scenario(const std::string& name);

/// The full command-line entry point; returns the exit code.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Flattened "key: value" lines of a report.
std::string render_text(const nlohmann::json& report);

}  // namespace henselium
