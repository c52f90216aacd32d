#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace msrec::cli {

/// Runs one command line (without the program name). Exit status 0 on
/// success, 1 on validation failure, 2 when an oracle check is undecided at
/// its bound.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace msrec::cli
