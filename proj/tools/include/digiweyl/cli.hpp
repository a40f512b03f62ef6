#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace digiweyl::cli {

enum ExitCode : int {
    kOk = 0,
    kViolation = 1,
    kUsage = 2,
    kResource = 3,
};

// Runs one subcommand; args excludes the program name. Artifacts go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Reads flat key=value lines ('#' comments, blank lines ignored) into
// "--key=value" tokens. ParameterError on malformed lines.
std::vector<std::string> config_tokens(const std::string& path);

} // namespace digiweyl::cli
