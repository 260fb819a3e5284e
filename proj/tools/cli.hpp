#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gcsa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitFormat = 2;
inline constexpr int kExitInternal = 3;

/// Runs the command line; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gcsa::cli
