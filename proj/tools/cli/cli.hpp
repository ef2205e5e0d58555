#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace urnlab::cli {

// Exit status: 0 success, 1 domain error, 2 usage error. `args` excludes the
// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace urnlab::cli
