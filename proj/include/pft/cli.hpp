#pragma once
#include <iosfwd>
#include <string>
#include <vector>

namespace pft {

// Command-line driver, callable in-process for tests.  Exit codes:
//   0  success
//   1  invalid usage or argument validation failure
//   2  internal verification failure
//   3  simulation sample budget exhausted
int cli_main(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err);

}  // namespace pft
