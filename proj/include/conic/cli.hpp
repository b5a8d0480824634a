#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conic::cli {

enum ExitCode { kOk = 0, kUsage = 2, kNumeric = 3, kVerifyFailed = 4 };

// Entry point of the conic-walks tool; argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "3", "0..d", "1..d-1", "n-1": bounds may use d and n with an optional -offset.
std::vector<long> parse_range(const std::string& spec, long n, long d);

}  // namespace conic::cli
