#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace strainlab {

/// Exit codes of the strainlab command line.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,          // malformed flags, unreadable or malformed file, unknown demo/suite
  kExitRecordErrors = 2,   // compute: at least one record has an error status
  kExitPropertyFailed = 3, // verify: at least one property failed
};

/// Runs `strainlab <args...>`; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace strainlab
