// Command dispatch for the fanodeg tool. Exit codes: 0 ok, 1 parse error,
// 2 domain error, 3 verification failure.
#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fanodeg::cli {

enum ExitCode { kOk = 0, kParseError = 1, kDomainError = 2, kVerifyFailed = 3 };

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fanodeg::cli
