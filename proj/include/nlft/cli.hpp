#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nlft::cli {

/// Exit codes: 0 success, 1 input or validation error, 2 numerical or
/// hypothesis failure (including failed hard checks in `verify`).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace nlft::cli
