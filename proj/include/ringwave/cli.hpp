#pragma once

namespace ringwave {

// Command-line driver. Returns the process exit code: 0 on success,
// 2 on invalid input, 3 on numerical failure.
int run_cli(int argc, char** argv);

} // namespace ringwave
