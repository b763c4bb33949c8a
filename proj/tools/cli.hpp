#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tcalc::cli {

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

// args excludes the program name
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcalc::cli
