#ifndef CMOMENT_CLI_HPP
#define CMOMENT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

#include "cmoment/error.hpp"
#include "cmoment/solver.hpp"

namespace cmoment {

// Exit codes: 0 solved / pass, 2 malformed input, 3 infeasible / conditions
// fail, 4 indeterminate, 5 column relation violated.
int exit_code(SolveStatus status);
int exit_code(ErrorCode code);

// args[0] is the program name. Subcommands: generate, solve, roots, check,
// build-matrix, xi.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cmoment

#endif  // CMOMENT_CLI_HPP
