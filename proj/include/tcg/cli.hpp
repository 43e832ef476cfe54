// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>

namespace tcg {

// Exit codes: 0 success, 1 a verdict or --expect assertion failed, 2 bad configuration,
// 3 runtime failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tcg
