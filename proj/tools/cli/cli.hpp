#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace covertorus::cli {

/// Runs one command. `args` excludes the program name. Returns the exit
/// status: 0 success, 1 domain error or failing verification, 2 parse or
/// usage error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace covertorus::cli
