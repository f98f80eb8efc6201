// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace folio::cli {

// Runs one pipeline subcommand. `args` excludes the program name. Returns
// 0 on success, 1 on validation or protocol errors, 2 on usage errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace folio::cli
