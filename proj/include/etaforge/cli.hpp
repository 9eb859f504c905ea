#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace etaforge::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kViolation = 1;  // a computed result contradicts a theorem
inline constexpr int kUsage = 2;      // bad arguments or inputs outside a precondition

// Runs one invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace etaforge::cli
