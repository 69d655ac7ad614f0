#ifndef CONSLAW_CLI_HPP
#define CONSLAW_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace conslaw
{

// Exit codes: 0 pass, 1 fail or necessary-only, 2 input error.
int run_command(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace conslaw

#endif
