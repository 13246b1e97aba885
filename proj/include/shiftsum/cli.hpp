#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "shiftsum/common.hpp"

namespace shiftsum {

/// Parses "re", "re,im", "re+imi" or "imi". Throws PreconditionError on bad input.
cplx parse_complex(const std::string& text);

/// Runs the command line; returns 0 on success, 1 on a computation error, 2 on a usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shiftsum
