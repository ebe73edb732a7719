#pragma once

#include <ostream>

namespace rankcrypt {

/// Entry point of the command-line tool. Returns 0 on success, 1 on an
/// operational failure and 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rankcrypt
