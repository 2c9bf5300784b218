#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fibcat {

// Exit codes: 0 ok, 1 input error, 2 audit violation, 3 suite failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fibcat
