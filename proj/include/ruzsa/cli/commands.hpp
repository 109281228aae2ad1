#ifndef RUZSA_CLI_COMMANDS_HPP_
#define RUZSA_CLI_COMMANDS_HPP_

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ruzsa/cli/config.hpp"

namespace ruzsa::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitUsage = 2,
};

struct Report {
  /// {schema_version, config, results, timing}.
  nlohmann::ordered_json json;
  /// Rows for --format csv, header first.
  std::string csv;
  int exit_code = kExitOk;
};

Report cmd_axioms(const RunConfig& config);
Report cmd_ruzsa(const RunConfig& config);
Report cmd_converge(const RunConfig& config);
Report cmd_inject(const RunConfig& config);
Report cmd_threshold(const RunConfig& config);

/// Dispatches on config.subcommand; throws UsageError for unknown names.
Report run(const RunConfig& config);

/// Report text in the configured format.
std::string render(const Report& report, const std::string& format);

/// run() + render(), writing to `out` (or config.output) and diagnostics to
/// `err`. Returns the process exit code.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ruzsa::cli

#endif  // RUZSA_CLI_COMMANDS_HPP_
