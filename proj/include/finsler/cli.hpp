// SPDX-License-Identifier: MIT
#pragma once

#include <iosfwd>

namespace finsler::cli {

/// Exit codes: 0 success, 1 failed checks or invalid profile, 2 usage or input error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace finsler::cli
