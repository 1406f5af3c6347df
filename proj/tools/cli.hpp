#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace psdcert::cli {

// Exit codes shared by the subcommands.
enum Exit : int {
  ok = 0,
  negative = 1,  // not PD/PSD, certified infeasible, precondition failure, identity gap
  input_error = 2,
  disagreement = 3,
  not_found = 4,
};

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace psdcert::cli
