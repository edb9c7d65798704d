#pragma once

#include <iosfwd>

namespace titlegen::cli {

/// Entry point of the `titlegen` command. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace titlegen::cli
