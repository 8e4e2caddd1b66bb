#ifndef GSHIFT_TOOLS_CLI_HPP
#define GSHIFT_TOOLS_CLI_HPP

#include <iosfwd>

namespace gshift::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kConfigError = 2, kInconclusive = 3 };

/// Entry point of the gshift tool; writes to `out` and `err` instead of the
/// process streams so tests can drive it.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gshift::cli

#endif
