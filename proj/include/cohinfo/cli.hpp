#pragma once

// Command-line front end. `run` takes the arguments after the program name
// and writes to the given streams, so tests can drive it in process.

#include <iosfwd>
#include <string>
#include <vector>

namespace cohinfo::cli {

enum ExitCode : int {
    kSuccess = 0,
    kInvalidInput = 2,       // parse or validation failure, unknown fixture
    kDimensionMismatch = 3,
    kAssertion = 4,          // an identity residual exceeded --tol
};

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohinfo::cli
