#pragma once

namespace bufsim::cli {

// Full command-line entry point, separated from main() so tests can drive
// it. Exit codes: 0 success, 1 a checked property was violated, 2 bad
// usage or unreadable input.
int run(int argc, const char* const* argv);

}  // namespace bufsim::cli
