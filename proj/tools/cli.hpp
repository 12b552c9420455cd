#pragma once

#include <iosfwd>

namespace pcpkit::cli {

// Exit codes: 0 ok, 1 check failure or numerical failure, 2 usage/parse error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pcpkit::cli
