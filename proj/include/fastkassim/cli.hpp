#pragma once

#include <iosfwd>

namespace fastkassim {

/// Entry point behind the `fastkassim` executable. Returns the process exit
/// code: 0 on success, 2 on input errors, 1 on internal failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fastkassim
