#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace waring::cli {

enum ExitCode : int { Success = 0, DomainFailure = 1, UsageError = 2 };

/// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace waring::cli
