#pragma once

#include <string>
#include <vector>

namespace imaug {

/// Parses argv and dispatches run / preview / stats / verify.
/// Returns 0 on success, 1 on runtime failure, 2 on usage errors.
int run_cli(int argc, const char* const* argv);

/// Same, from bare arguments (no program name).
int run_cli(const std::vector<std::string>& args);

}  // namespace imaug
