#ifndef FFQE_CLI_HPP
#define FFQE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace ffqe {

// Runs the command line given argv-style arguments (without the program
// name). Exit codes: 0 success, 1 usage or syntax error, 2 semantic error,
// 3 budget exhausted.
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ffqe

#endif
