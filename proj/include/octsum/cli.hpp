#pragma once

#include <string>
#include <vector>

namespace octsum::cli {

// Exit codes: 0 success / pass, 1 fail / not represented / not universal,
// 2 usage errors.
int run(int argc, const char* const* argv);
int run(const std::vector<std::string>& args);  // args without the program name

}  // namespace octsum::cli
