// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mubkit {

/// Run one CLI invocation. args excludes the program name. Returns 0 on
/// success, 1 on validation failure, 2 on usage errors; --help and
/// --version print to out and return 0.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mubkit
