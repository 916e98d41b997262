#pragma once

#include <string>
#include <vector>

namespace mis::cli {

// Full command-line entry point; returns the process exit status.
int run(const std::vector<std::string>& args);
int run(int argc, const char* const* argv);

}  // namespace mis::cli
