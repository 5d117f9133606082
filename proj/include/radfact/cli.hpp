#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace radfact {

// Exit codes: 0 success, 1 a check failed, 2 the input could not be parsed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace radfact
