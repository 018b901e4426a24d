#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace latiso {

/// Runs one command line (without the program name). Exit codes: 0 success
/// or ISOMORPHIC, 1 NOT_ISOMORPHIC, 2 usage, parse or validation error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latiso
