#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tdtc::cli {

// Exit codes: 0 success, 1 validation errors, 2 parse errors, 3 usage
// errors / unknown names.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitParse = 2;
inline constexpr int kExitUsage = 3;

// Runs the command line driver. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tdtc::cli
