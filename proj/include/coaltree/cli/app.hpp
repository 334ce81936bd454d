#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace coaltree::cli {

inline constexpr const char* kVersion = "0.1.0";

// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kDomain = 3,
    kInput = 4,        // parse errors, malformed trees, degenerate series, unreadable files
    kSolver = 5,
    kConsistency = 6,
    kTestUndefined = 7,
    kAccuracy = 9,     // finished, but a check or accuracy monitor failed
};

// Runs one command line (args excludes the program name). Results go to
// `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coaltree::cli
