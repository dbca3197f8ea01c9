#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abelsup {

/// Exit codes: 0 success / PASS, 1 FAIL, 2 usage or parameter error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace abelsup
