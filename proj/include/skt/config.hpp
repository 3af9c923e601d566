#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skt {

/// Dispatches one CLI invocation: args[0] names the subcommand, the rest are
/// flags (--config <path>, --out <path>). Reports go to --out (extension
/// selects CSV or JSON) or to `out` as JSON. Returns 0 on pass/completion,
/// 1 when a computed report fails its tolerance, 2 on configuration errors.
int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

}  // namespace skt
