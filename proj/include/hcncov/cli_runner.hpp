#pragma once

namespace hcncov {

// Full command-line front end (analyze / simulate / validate / sweep).
// Returns the process exit code.
int run_cli(int argc, const char* const* argv);

}  // namespace hcncov
