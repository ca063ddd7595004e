#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace agreetensor::cli {

enum ExitCode : int { Ok = 0, VerificationFailed = 1, Usage = 2, Failure = 3 };

/// Runs one command line (without the program name). Output goes to `out`; failures print
/// one diagnostic line to `err` and return the matching exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agreetensor::cli
