#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uag::cli {

// Exit codes: 0 success (and true verdicts), 1 false verdict, 2 usage or
// parse error, 3 semantic error (budget, precondition).
constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSemantic = 3;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace uag::cli
