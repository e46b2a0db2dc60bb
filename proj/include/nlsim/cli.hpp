#pragma once

#include <string>
#include <vector>

namespace nlsim {

/// Command-line front door.  argv[0] is the command name:
/// simulate | diagnose | verify-weights | verify-morawetz | verify-appendix |
/// verify-strichartz | sweep.
/// Returns 0 on all-pass, 1 on any verification FAIL, 2 on usage/config error.
int run_command(const std::vector<std::string>& argv);

}  // namespace nlsim
