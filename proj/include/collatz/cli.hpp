#pragma once

#include "collatz/witness_forge.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace collatz::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
    kSuccess = 0,
    kUsage = 1,
    kInternalFailure = 2,
    kPatternFalse = 3,
};

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Prints a forge report; exit code follows witness.verified.
int render_forge(const Witness& witness, bool json, std::ostream& out);

}  // namespace collatz::cli
