#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace formality::cli {

/// Runs one formality-lab invocation. Exit codes: 0 success, 1 verdict
/// "impossible" or validation failure, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace formality::cli
