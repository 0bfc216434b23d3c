#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dunklhit::cli {

inline constexpr const char* version = "0.1.0";

// Exit codes: 0 success, 1 failed check or internal failure, 2 validation error, 3 numerical error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dunklhit::cli
