#pragma once

#include <ostream>

namespace skg::service {

/// Entry point of the `skg` tool: parses the subcommand and flags, runs the
/// stage (or the server) and returns the process exit code. Diagnostics go
/// to `err`, progress to `out`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace skg::service
