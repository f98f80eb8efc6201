// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace folio::text {

/// RFC 3986 unreserved characters: ALPHA / DIGIT / "-" / "." / "_" / "~".
bool is_unreserved(unsigned char c);

/// Percent-encodes every byte outside the RFC 3986 unreserved set.
std::string percent_encode(std::string_view s);

/// Percent-encodes every byte outside `keep`. Bytes listed in `keep` pass
/// through verbatim; '%' is always encoded.
std::string percent_encode(std::string_view s, std::string_view keep);

/// Decodes %XX escapes; malformed escapes are copied through unchanged.
std::string percent_decode(std::string_view s);

bool is_ascii_space(unsigned char c);

/// Strips leading/trailing ASCII whitespace.
std::string_view trim(std::string_view s);

/// Splits on a single-character delimiter, keeping empty fields.
std::vector<std::string> split(std::string_view s, char sep);

std::string to_lower_ascii(std::string_view s);

}  // namespace folio::text
