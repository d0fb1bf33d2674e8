#pragma once

// Command-line front end.  Exit codes: 0 ok, 1 IO failure, 2 schema or usage
// error, 3 map not *-linear, 4 verification or comparison failure, 5 missing
// provenance.  stdout carries JSON, stderr human-readable diagnostics.

#include <iosfwd>
#include <string>
#include <vector>

namespace hillrep {

enum ExitCode : int {
  kExitOk = 0,
  kExitIo = 1,
  kExitSchema = 2,
  kExitNotStarLinear = 3,
  kExitVerification = 4,
  kExitMissingProvenance = 5,
};

/// Runs one command; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hillrep
