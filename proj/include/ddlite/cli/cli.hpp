#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ddlite::cli {

/// Runs one subcommand (parse, graph, diff, eval, swrl, query, prove).
/// `args` excludes the program name. Returns the process exit code:
/// 0 success, 1 domain error, 2 I/O or usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ddlite::cli
