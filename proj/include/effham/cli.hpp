#pragma once

namespace effham {

// Full command-line front end (subcommands run-ada, learn, bch, rank,
// report). Returns the process exit code: 0 success, 2 config error,
// 3 no admissible step, 4 optimizer failure, 5 numerical guard.
int run_cli(int argc, char** argv);

}  // namespace effham
