#pragma once

#include <iosfwd>

namespace dh {

// Command-line front end. Exit status: 0 success, 1 computational mismatch, 2 usage error,
// 3 data validation failure. `in` serves "-" file arguments.
int runCli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace dh
