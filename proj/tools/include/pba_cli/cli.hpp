#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pba::cli {

/// Exit codes.
enum Exit : int { holds = 0, fails = 1, inconclusive = 2, input_error = 3, internal_error = 4 };

/// Runs one command line (args excludes the program name). JSON goes to
/// `out`, a one-line summary or diagnostic to `err`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace pba::cli
