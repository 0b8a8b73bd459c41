#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gtml::cli {

// Runs one command. Results go to `out` (or the --out file), diagnostics and
// usage errors to `err`. Exit code: 0 success or suite pass, 1 verification
// failure or integrity error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gtml::cli
