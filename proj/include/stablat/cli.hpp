#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stablat {

/// Runs the command line (without the program name). Returns 0 on success,
/// 1 on a validation or computation failure, 2 on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stablat
