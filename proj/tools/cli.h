#ifndef WARMFLOW_TOOLS_CLI_H_
#define WARMFLOW_TOOLS_CLI_H_

#include <iosfwd>

namespace warmflow {

// Entry point of the warmflow command-line tool. Returns the process exit
// code; diagnostics go to err.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace warmflow

#endif  // WARMFLOW_TOOLS_CLI_H_
