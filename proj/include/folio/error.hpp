// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace folio {

/// Base of every typed failure in the toolkit. The code is a stable,
/// prefix-tagged identifier ("E_OAI_*", "E_SCHEMA_*", "E_QUERY_*", ...)
/// suitable for scripting against CLI stderr output.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace folio
