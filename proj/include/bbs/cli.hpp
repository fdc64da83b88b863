#pragma once

#include <iosfwd>

namespace bbs {

/// Runs one subcommand. Exit codes: 0 success, 1 consistency failure, 2 usage.
int dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bbs
