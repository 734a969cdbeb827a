#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace linkdecay::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Entry point of the `linkdecay` tool. `args` excludes the program name.
/// Input "-" reads `in`, output "-" writes `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace linkdecay::cli
