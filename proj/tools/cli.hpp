#pragma once

#include <iosfwd>

namespace coopsim::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kInternal = 4,
};

/// Entry point of the `coopsim` command. Reports go to `out`, diagnostics to
/// `err`; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace coopsim::cli
