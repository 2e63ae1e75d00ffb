#pragma once

namespace popmatch::cli {

/// Command-line front end. Exit codes: 0 success / Popular verdict,
/// 1 bad input, 2 NotPopular, 3 Inconclusive, 4 enumeration budget exceeded.
int run(int argc, const char* const* argv);

}  // namespace popmatch::cli
