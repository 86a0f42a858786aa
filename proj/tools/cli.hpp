#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lotcycle::cli {

// Exit codes: 0 success, 1 domain error (infeasible, unsupported, invalid
// schedule, ...), 2 usage, I/O or parse error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lotcycle::cli
