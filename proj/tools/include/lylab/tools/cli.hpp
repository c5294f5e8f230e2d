#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lylab::tools {

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 2, kExitInput = 3, kExitNumerical = 4 };

// args excludes the program name. Reports go to `out` unless --output names a
// file; diagnostics go to `err` as "E_CODE: message" lines.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace lylab::tools
