#ifndef TSN_CLI_CLI_HPP_
#define TSN_CLI_CLI_HPP_

#include <iosfwd>

namespace tsn::cli {

// Exit codes: 0 success, 1 infeasible, 2 input error, 3 internal error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tsn::cli

#endif  // TSN_CLI_CLI_HPP_
