#ifndef MEIXNER_CLI_HPP
#define MEIXNER_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace meixner {

// Dispatches the subcommands (validate, classify, moments, laplace, sample,
// oracle, verify). Returns the process exit code: 0 success, 1 check failure,
// 2 usage error, 3 input error. Errors are emitted as JSON objects on `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

} // namespace meixner

#endif
