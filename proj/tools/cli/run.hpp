// Entry point shared by the command-line binary and the CLI test suite.
#ifndef LIESYM_CLI_RUN_HPP
#define LIESYM_CLI_RUN_HPP

#include <iosfwd>

namespace liesym_cli {

// Parses argv and executes one subcommand, writing reports to `out` and
// diagnostics to `err`. Returns the process exit code: 0 success,
// 1 verification failure, 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace liesym_cli

#endif
