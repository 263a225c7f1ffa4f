#pragma once

#include <iosfwd>

namespace transpec::cli {

/// Entry point of the `transpec` tool. Returns 0 on success, 1 on invalid input, 2 when a
/// computation cannot be carried out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace transpec::cli
