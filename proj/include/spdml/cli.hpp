#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spdml::cli {

/// Runs one command line (args[0] is the program name). Normal output goes to
/// `out`, diagnostics to `err`. Returns 0 on success, 1 on library or file
/// errors, 2 on usage errors, 3 when gradcheck exceeds its bound.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spdml::cli
