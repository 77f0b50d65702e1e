#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sewkit::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kBoundViolation = 2 };

/// Invalid or unreadable experiment configuration. `where` is a JSON pointer
/// or a line/column position.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what) {}
};

struct RunOptions {
  std::string config_path;
  std::optional<std::string> experiment;  // must match the config when given
  std::uint64_t seed = 1;
  bool quiet = false;
};

/// Runs one experiment. CSV goes to the config's `output` file, or to `out`
/// when none is set; the summary goes to `log` unless quiet.
int run(const RunOptions& options, std::ostream& out, std::ostream& log);

/// Command-line entry point: sewkit <sew|knit|holonomy|certify|run> --config FILE.
int main(int argc, char** argv);

}  // namespace sewkit::cli
