#pragma once

namespace strata {

// Full command-line driver; returns the process exit code.
// 0 = success, 1 = runtime/verification failure, 2 = usage error.
int cli_main(int argc, char** argv);

}  // namespace strata
