#pragma once

#include <iosfwd>

namespace hagkit::cli {

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kIo = 3 };

// Entry point shared by the executable and the in-process CLI tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hagkit::cli
