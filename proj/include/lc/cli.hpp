#ifndef LC_CLI_HPP
#define LC_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace lc::cli {

// Runs one command. Exit codes: 0 for a value / yes verdict, 2 for
// not-outer-measurable / no, 3 for undecided / unknown, 1 for errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

} // namespace lc::cli

#endif
