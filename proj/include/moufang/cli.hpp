#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace moufang {

// parses and runs one invocation; returns the exit status:
// 0 success, 1 domain error (typed message on err), 2 usage error
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace moufang
