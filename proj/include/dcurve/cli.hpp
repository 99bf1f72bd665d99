#pragma once

namespace dcurve {

/// Command-line entry point. Exit status: 0 on success, 2 on usage or
/// validation errors, 1 on internal errors (and on verification failures
/// from the `verify` subcommand).
int cli_run(int argc, const char* const* argv);

}  // namespace dcurve
