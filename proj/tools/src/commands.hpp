#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlie::cli {

/// Exit codes: 0 success or pass, 1 an identity check failed, 2 usage or
/// input error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitInputError = 2;

/// Runs `nlie <args...>` writing reports to out and diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nlie::cli
