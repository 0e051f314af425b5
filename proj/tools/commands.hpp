#pragma once

namespace recurlab::cli {

// Full command-line front end; returns the process exit status
// (0 = all pass, 1 = bound violated / inconsistency / golden mismatch,
// 2 = usage or config error).
int run_cli(int argc, char** argv);

}  // namespace recurlab::cli
