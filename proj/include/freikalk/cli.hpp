#pragma once

// Command-line front door. run() parses the argument list (program name
// excluded), routes to a subcommand, and writes the canonical text or JSON
// result to `out` with diagnostics on `err`.
//
// Exit codes: 0 definite result, 2 usage, parse, or domain errors, 3 bounded
// procedures exhausted without a verdict, 4 failed internal cross-checks.

#include <iosfwd>
#include <string>
#include <vector>

namespace freikalk {

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace freikalk
