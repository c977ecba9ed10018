#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace evident {

/// Command-line entry point behind the binary; args exclude the program
/// name. Reports go to out, diagnostics to err. Returns 0 on success, 1 on
/// parse or validation failures, 2 when a computation refuses to run
/// (contradictory sources, enumeration cap, rejection cap).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace evident
