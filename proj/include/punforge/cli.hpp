#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace punforge::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kDataError = 2 };

// Entry point of the punforge tool. Subcommands: index, train-lm,
// train-skipgram, score, generate, correlate.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace punforge::cli
