#pragma once

#include <string>
#include <vector>

namespace specden {

// Exit codes: 0 success, 2 usage/input error, 3 numerical or budget error.
int run_cli(int argc, const char* const* argv);
int run_cli(const std::vector<std::string>& args);  // args without the program name

}  // namespace specden
