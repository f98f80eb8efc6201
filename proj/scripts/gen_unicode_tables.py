#!/usr/bin/env python3
"""Generates src/unicode_tables.cpp from Python's unicodedata.

The tables carry fully expanded canonical (NFD) and compatibility (NFKD)
decompositions, canonical combining classes, primary composition pairs,
simple lowercase mappings and combining-mark ranges. Hangul syllables
(U+AC00..U+D7A3) are handled algorithmically at runtime and excluded here.

Run from the repository root:  python3 scripts/gen_unicode_tables.py
"""

import sys
import unicodedata

HANGUL_FIRST = 0xAC00
HANGUL_LAST = 0xD7A3


def is_hangul_syllable(cp: int) -> bool:
    return HANGUL_FIRST <= cp <= HANGUL_LAST


def codepoints(s: str):
    return [ord(c) for c in s]


def main() -> int:
    canon = {}   # cp -> full NFD expansion (differs from identity)
    compat = {}  # cp -> full NFKD expansion (differs from NFD expansion)
    ccc = {}     # cp -> combining class != 0
    lower = {}   # cp -> full lowercase expansion (differs from identity)
    marks = []   # codepoints with general category M*

    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF:
            continue
        c = chr(cp)
        if not is_hangul_syllable(cp):
            nfd = unicodedata.normalize("NFD", c)
            nfkd = unicodedata.normalize("NFKD", c)
            if nfd != c:
                canon[cp] = codepoints(nfd)
            if nfkd != nfd:
                compat[cp] = codepoints(nfkd)
        k = unicodedata.combining(c)
        if k:
            ccc[cp] = k
        lo = c.lower()
        if lo != c:
            lower[cp] = codepoints(lo)
        if unicodedata.category(c).startswith("M"):
            marks.append(cp)

    # Primary composition pairs: one-level canonical decompositions of
    # length two that NFC actually recombines (this respects the
    # composition exclusions without needing the exclusion list itself).
    comp = []
    for cp in range(0x110000):
        if 0xD800 <= cp <= 0xDFFF or is_hangul_syllable(cp):
            continue
        d = unicodedata.decomposition(chr(cp))
        if not d or d.startswith("<"):
            continue
        fields = d.split()
        if len(fields) != 2:
            continue
        a, b = int(fields[0], 16), int(fields[1], 16)
        if unicodedata.normalize("NFC", chr(a) + chr(b)) == chr(cp):
            comp.append((a, b, cp))
    comp.sort()

    # Mark ranges
    mark_ranges = []
    for cp in marks:
        if mark_ranges and mark_ranges[-1][1] + 1 == cp:
            mark_ranges[-1][1] = cp
        else:
            mark_ranges.append([cp, cp])

    pool = []

    def pooled(seq):
        off = len(pool)
        pool.extend(seq)
        return off, len(seq)

    canon_entries = [(cp, *pooled(seq)) for cp, seq in sorted(canon.items())]
    compat_entries = [(cp, *pooled(seq)) for cp, seq in sorted(compat.items())]
    lower_entries = [(cp, *pooled(seq)) for cp, seq in sorted(lower.items())]

    out = sys.stdout
    w = out.write
    w("// Generated by scripts/gen_unicode_tables.py (Unicode %s). Do not edit.\n"
      % unicodedata.unidata_version)
    w('#include "folio/unicode_tables.hpp"\n\n')
    w("namespace folio::unicode::tables {\n\n")

    w("const char32_t kPool[] = {\n")
    for i in range(0, len(pool), 12):
        w("    " + ",".join("0x%X" % v for v in pool[i:i + 12]) + ",\n")
    w("};\n\n")

    def emit_decomp(name, entries):
        w("const Expansion %s[] = {\n" % name)
        for cp, off, ln in entries:
            w("    {0x%X,%d,%d},\n" % (cp, off, ln))
        w("};\n")
        w("const std::size_t %sCount = %d;\n\n" % (name, len(entries)))

    emit_decomp("kCanonical", canon_entries)
    emit_decomp("kCompat", compat_entries)
    emit_decomp("kLower", lower_entries)

    w("const CombiningClass kCombining[] = {\n")
    for cp, k in sorted(ccc.items()):
        w("    {0x%X,%d},\n" % (cp, k))
    w("};\n")
    w("const std::size_t kCombiningCount = %d;\n\n" % len(ccc))

    w("const CompositionPair kComposition[] = {\n")
    for a, b, c in comp:
        w("    {0x%X,0x%X,0x%X},\n" % (a, b, c))
    w("};\n")
    w("const std::size_t kCompositionCount = %d;\n\n" % len(comp))

    w("const Range kMarks[] = {\n")
    for lo, hi in mark_ranges:
        w("    {0x%X,0x%X},\n" % (lo, hi))
    w("};\n")
    w("const std::size_t kMarksCount = %d;\n\n" % len(mark_ranges))

    w("}  // namespace folio::unicode::tables\n")
    sys.stderr.write(
        "canonical=%d compat=%d lower=%d ccc=%d comp=%d marks=%d pool=%d\n"
        % (len(canon), len(compat), len(lower), len(ccc), len(comp),
           len(mark_ranges), len(pool)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
