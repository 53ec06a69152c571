#pragma once

#include <iosfwd>

namespace rmx {

// Exit codes: 0 success or verify pass, 1 verify failure, 2 bad flags,
// 3 numeric failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rmx
