// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>

namespace folio::unicode::tables {

// Entry pointing into kPool. Tables are sorted by codepoint for binary search.
struct Expansion {
    char32_t cp;
    unsigned offset;
    unsigned length;
};

struct CombiningClass {
    char32_t cp;
    unsigned char ccc;
};

struct CompositionPair {
    char32_t first;
    char32_t second;
    char32_t composed;
};

struct Range {
    char32_t lo;
    char32_t hi;
};

extern const char32_t kPool[];

extern const Expansion kCanonical[];
extern const std::size_t kCanonicalCount;

extern const Expansion kCompat[];
extern const std::size_t kCompatCount;

extern const Expansion kLower[];
extern const std::size_t kLowerCount;

extern const CombiningClass kCombining[];
extern const std::size_t kCombiningCount;

extern const CompositionPair kComposition[];
extern const std::size_t kCompositionCount;

extern const Range kMarks[];
extern const std::size_t kMarksCount;

}  // namespace folio::unicode::tables
