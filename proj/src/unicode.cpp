// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/unicode.hpp"

#include <algorithm>
#include <cstddef>

#include "folio/unicode_tables.hpp"

namespace folio::unicode {

namespace {

using tables::Expansion;

constexpr char32_t kReplacement = 0xFFFD;

// Hangul syllable composition/decomposition (UAX #15 §3.12).
constexpr char32_t kSBase = 0xAC00;
constexpr char32_t kLBase = 0x1100;
constexpr char32_t kVBase = 0x1161;
constexpr char32_t kTBase = 0x11A7;
constexpr char32_t kLCount = 19;
constexpr char32_t kVCount = 21;
constexpr char32_t kTCount = 28;
constexpr char32_t kNCount = kVCount * kTCount;
constexpr char32_t kSCount = kLCount * kNCount;

const Expansion* find_expansion(const Expansion* table, std::size_t count, char32_t cp) {
    const Expansion* end = table + count;
    const Expansion* it = std::lower_bound(table, end, cp, [](const Expansion& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it : nullptr;
}

void append_expansion(const Expansion* e, std::u32string& out) {
    for (unsigned i = 0; i < e->length; ++i)
        out.push_back(tables::kPool[e->offset + i]);
}

void decompose_cp(char32_t cp, bool compat, std::u32string& out) {
    if (cp >= kSBase && cp < kSBase + kSCount) {
        const char32_t s = cp - kSBase;
        out.push_back(kLBase + s / kNCount);
        out.push_back(kVBase + (s % kNCount) / kTCount);
        if (s % kTCount != 0)
            out.push_back(kTBase + s % kTCount);
        return;
    }
    if (compat) {
        if (const Expansion* e = find_expansion(tables::kCompat, tables::kCompatCount, cp)) {
            append_expansion(e, out);
            return;
        }
    }
    if (const Expansion* e = find_expansion(tables::kCanonical, tables::kCanonicalCount, cp)) {
        append_expansion(e, out);
        return;
    }
    out.push_back(cp);
}

std::u32string decompose(const std::u32string& s, bool compat) {
    std::u32string out;
    out.reserve(s.size());
    for (char32_t cp : s)
        decompose_cp(cp, compat, out);
    return out;
}

// Canonical ordering: stable sort of nonzero-ccc runs by combining class.
void order_canonically(std::u32string& s) {
    std::size_t i = 0;
    while (i < s.size()) {
        if (combining_class(s[i]) == 0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && combining_class(s[j]) != 0)
            ++j;
        std::stable_sort(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(j),
                         [](char32_t a, char32_t b) { return combining_class(a) < combining_class(b); });
        i = j;
    }
}

bool compose_pair(char32_t a, char32_t b, char32_t& out) {
    if (a >= kLBase && a < kLBase + kLCount && b >= kVBase && b < kVBase + kVCount) {
        out = kSBase + ((a - kLBase) * kVCount + (b - kVBase)) * kTCount;
        return true;
    }
    if (a >= kSBase && a < kSBase + kSCount && (a - kSBase) % kTCount == 0 && b > kTBase && b < kTBase + kTCount) {
        out = a + (b - kTBase);
        return true;
    }
    const tables::CompositionPair* end = tables::kComposition + tables::kCompositionCount;
    const auto* it = std::lower_bound(tables::kComposition, end, std::pair<char32_t, char32_t>{a, b},
                                      [](const tables::CompositionPair& p, const std::pair<char32_t, char32_t>& key) {
                                          return p.first != key.first ? p.first < key.first : p.second < key.second;
                                      });
    if (it != end && it->first == a && it->second == b) {
        out = it->composed;
        return true;
    }
    return false;
}

std::u32string compose(const std::u32string& s) {
    std::u32string out;
    out.reserve(s.size());
    std::ptrdiff_t starter = -1;
    int last_ccc = -1;  // ccc of the char appended after the starter; -1 if none
    for (char32_t cp : s) {
        const int cc = combining_class(cp);
        if (starter >= 0 && last_ccc < cc) {
            char32_t composed;
            if (compose_pair(out[static_cast<std::size_t>(starter)], cp, composed)) {
                out[static_cast<std::size_t>(starter)] = composed;
                continue;
            }
        }
        out.push_back(cp);
        if (cc == 0) {
            starter = static_cast<std::ptrdiff_t>(out.size()) - 1;
            last_ccc = -1;
        } else {
            last_ccc = cc;
        }
    }
    return out;
}

std::u32string collapse_whitespace(const std::u32string& s) {
    std::u32string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (char32_t cp : s) {
        if (is_whitespace(cp)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(U' ');
            pending_space = false;
        }
        out.push_back(cp);
    }
    return out;
}

}  // namespace

std::u32string decode_utf8(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        if (i + static_cast<std::size_t>(len) > s.size()) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        bool ok = true;
        for (int k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
            if ((b & 0xC0) != 0x80) {
                ok = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        // Reject overlong forms, surrogates and out-of-range values.
        if (ok && ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
                   (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF))
            ok = false;
        if (!ok) {
            out.push_back(kReplacement);
            ++i;
            continue;
        }
        out.push_back(cp);
        i += static_cast<std::size_t>(len);
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(const std::u32string& s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s)
        append_utf8(out, cp);
    return out;
}

bool is_valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto b0 = static_cast<unsigned char>(s[i]);
        int len;
        char32_t cp;
        if (b0 < 0x80) {
            ++i;
            continue;
        } else if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            return false;
        }
        if (i + static_cast<std::size_t>(len) > s.size())
            return false;
        for (int k = 1; k < len; ++k) {
            const auto b = static_cast<unsigned char>(s[i + static_cast<std::size_t>(k)]);
            if ((b & 0xC0) != 0x80)
                return false;
            cp = (cp << 6) | (b & 0x3F);
        }
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
            (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
            return false;
        i += static_cast<std::size_t>(len);
    }
    return true;
}

unsigned char combining_class(char32_t cp) {
    const tables::CombiningClass* end = tables::kCombining + tables::kCombiningCount;
    const auto* it = std::lower_bound(tables::kCombining, end, cp,
                                      [](const tables::CombiningClass& e, char32_t v) { return e.cp < v; });
    return (it != end && it->cp == cp) ? it->ccc : 0;
}

bool is_mark(char32_t cp) {
    const tables::Range* end = tables::kMarks + tables::kMarksCount;
    const auto* it = std::upper_bound(tables::kMarks, end, cp, [](char32_t v, const tables::Range& r) { return v < r.lo; });
    return it != tables::kMarks && cp <= (it - 1)->hi;
}

bool is_whitespace(char32_t cp) {
    switch (cp) {
    case 0x09:
    case 0x0A:
    case 0x0B:
    case 0x0C:
    case 0x0D:
    case 0x20:
    case 0x85:
    case 0xA0:
    case 0x1680:
    case 0x2028:
    case 0x2029:
    case 0x202F:
    case 0x205F:
    case 0x3000:
        return true;
    default:
        return cp >= 0x2000 && cp <= 0x200A;
    }
}

std::string nfc(std::string_view utf8) {
    std::u32string s = decompose(decode_utf8(utf8), false);
    order_canonically(s);
    return encode_utf8(compose(s));
}

std::string nfkd(std::string_view utf8) {
    std::u32string s = decompose(decode_utf8(utf8), true);
    order_canonically(s);
    return encode_utf8(s);
}

std::string clean_text(std::string_view utf8) {
    std::u32string s = decompose(decode_utf8(utf8), false);
    order_canonically(s);
    return encode_utf8(collapse_whitespace(compose(s)));
}

std::string fold_name(std::string_view utf8) {
    std::u32string s = decompose(decode_utf8(utf8), true);
    order_canonically(s);
    std::u32string folded;
    folded.reserve(s.size());
    for (char32_t cp : s) {
        if (is_mark(cp))
            continue;
        if (const Expansion* e = find_expansion(tables::kLower, tables::kLowerCount, cp)) {
            for (unsigned i = 0; i < e->length; ++i)
                folded.push_back(tables::kPool[e->offset + i]);
        } else {
            folded.push_back(cp);
        }
    }
    return encode_utf8(collapse_whitespace(folded));
}

}  // namespace folio::unicode
