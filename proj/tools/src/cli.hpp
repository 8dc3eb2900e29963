#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ftp::cli {

// Exit codes: 0 decided, 1 usage or parse error, 2 size guard exceeded.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitSizeGuard = 2;

// args excludes the program name. Reports go to `out` as one JSON object per
// line; the human summary goes to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ftp::cli
