#pragma once

#include <iosfwd>

namespace vexlab::cli {

// Exit codes: 0 success, 2 a relation check flagged a violation, 1 error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace vexlab::cli
