#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bils {

/// Parse and dispatch one invocation.  `args` excludes the program name.
/// Exit codes: 0 success, 1 runtime error (named on stderr), 2 argument
/// error.  All CSV goes to `out` unless --out redirects it to a file.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace bils
