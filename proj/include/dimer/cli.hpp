#pragma once

#include <iosfwd>

namespace dimer::cli {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitCheckFailed = 2;

// Environment variable naming the default output directory.
constexpr const char* kOutDirEnv = "DIMER_OUT_DIR";

// Entry point shared by the executable and the tests.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dimer::cli
