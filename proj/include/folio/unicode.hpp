// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace folio::unicode {

/// Decodes UTF-8; ill-formed sequences become U+FFFD (one per bad byte run).
std::u32string decode_utf8(std::string_view s);

std::string encode_utf8(const std::u32string& s);

/// Appends one code point as UTF-8.
void append_utf8(std::string& out, char32_t cp);

bool is_valid_utf8(std::string_view s);

unsigned char combining_class(char32_t cp);

bool is_mark(char32_t cp);

/// Unicode White_Space property.
bool is_whitespace(char32_t cp);

/// Canonical composition (NFC).
std::string nfc(std::string_view utf8);

/// Compatibility decomposition (NFKD).
std::string nfkd(std::string_view utf8);

/// NFC, leading/trailing whitespace stripped, internal whitespace runs
/// collapsed to single spaces. The house normal form for stored metadata.
std::string clean_text(std::string_view utf8);

/// Matching key for entity labels: NFKD, combining marks stripped,
/// lowercased, whitespace collapsed and trimmed.
std::string fold_name(std::string_view utf8);

}  // namespace folio::unicode
