#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hkbec::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitUsage = 2;

/// Full command line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hkbec::cli
