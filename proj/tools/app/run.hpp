#pragma once

#include <iosfwd>

namespace isor::app {

// Exit status: 0 all checks pass, 1 checks failed, 2 configuration error,
// 3 numerical failure.
enum Exit { kPass = 0, kChecksFailed = 1, kConfigError = 2, kNumericError = 3 };

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace isor::app
