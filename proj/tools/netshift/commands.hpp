#pragma once

namespace netshift_cli {

// Parses argv, dispatches to the chosen subcommand, and maps failures to
// exit codes: 0 success, 2 bad input or usage, 1 runtime failure.
int run(int argc, char** argv);

}  // namespace netshift_cli
