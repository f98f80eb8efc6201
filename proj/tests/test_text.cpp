// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <string>

#include "folio/text.hpp"

using namespace folio::text;

TEST_CASE("unreserved set is exactly RFC 3986") {
    int count = 0;
    for (int c = 0; c < 256; ++c)
        if (is_unreserved(static_cast<unsigned char>(c)))
            ++count;
    CHECK(count == 26 + 26 + 10 + 4);
    CHECK(is_unreserved('A'));
    CHECK(is_unreserved('z'));
    CHECK(is_unreserved('0'));
    CHECK(is_unreserved('-'));
    CHECK(is_unreserved('.'));
    CHECK(is_unreserved('_'));
    CHECK(is_unreserved('~'));
    CHECK_FALSE(is_unreserved(' '));
    CHECK_FALSE(is_unreserved('%'));
    CHECK_FALSE(is_unreserved('/'));
    CHECK_FALSE(is_unreserved(0xC3));
}

TEST_CASE("percent_encode pins") {
    CHECK(percent_encode("") == "");
    CHECK(percent_encode("abcXYZ019-._~") == "abcXYZ019-._~");
    CHECK(percent_encode("a b") == "a%20b");
    CHECK(percent_encode("oai:jbc:1") == "oai%3Ajbc%3A1");
    CHECK(percent_encode("50%") == "50%25");
    // Uppercase hex digits.
    CHECK(percent_encode("\xC5\x82") == "%C5%82");
    CHECK(percent_encode("\x0A") == "%0A");
}

TEST_CASE("percent_encode with keep set") {
    CHECK(percent_encode("a/b c", "/") == "a/b%20c");
    CHECK(percent_encode("x:y", ":") == "x:y");
    // '%' must be encoded even when listed in keep, else decoding is ambiguous.
    CHECK(percent_encode("50%", "%") == "50%25");
}

TEST_CASE("percent_decode pins and leniency") {
    CHECK(percent_decode("") == "");
    CHECK(percent_decode("a%20b") == "a b");
    CHECK(percent_decode("oai%3Ajbc%3A1") == "oai:jbc:1");
    CHECK(percent_decode("%c5%82") == "\xC5\x82");  // lowercase hex accepted
    CHECK(percent_decode("%C5%82") == "\xC5\x82");
    // Malformed escapes pass through unchanged.
    CHECK(percent_decode("100%") == "100%");
    CHECK(percent_decode("%G1") == "%G1");
    CHECK(percent_decode("%1") == "%1");
    CHECK(percent_decode("%%41") == "%A");
}

TEST_CASE("decode inverts encode on random bytes") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    std::uniform_int_distribution<int> len(0, 40);
    for (int trial = 0; trial < 500; ++trial) {
        std::string raw;
        const int n = len(rng);
        for (int i = 0; i < n; ++i)
            raw += static_cast<char>(byte(rng));
        const std::string encoded = percent_encode(raw);
        CHECK(percent_decode(encoded) == raw);
        for (char c : encoded) {
            const auto uc = static_cast<unsigned char>(c);
            CHECK((is_unreserved(uc) || uc == '%' || (uc >= '0' && uc <= '9') ||
                   (uc >= 'A' && uc <= 'F')));
        }
    }
}

TEST_CASE("trim strips ASCII whitespace only") {
    CHECK(trim("") == "");
    CHECK(trim("   ") == "");
    CHECK(trim("  a b  ") == "a b");
    CHECK(trim("\t\r\n x \v\f") == "x");
    // Non-ASCII whitespace (NBSP) is not trimmed here.
    CHECK(trim("\xC2\xA0x") == "\xC2\xA0x");
}

TEST_CASE("split keeps empty fields") {
    CHECK(split("", ',') == std::vector<std::string>{""});
    CHECK(split("a,b,c", ',') == std::vector<std::string>{"a", "b", "c"});
    CHECK(split(",a,", ',') == std::vector<std::string>{"", "a", ""});
    CHECK(split("a::b", ':') == std::vector<std::string>{"a", "", "b"});
}

TEST_CASE("to_lower_ascii leaves non-ASCII alone") {
    CHECK(to_lower_ascii("MiXeD 123") == "mixed 123");
    CHECK(to_lower_ascii("\xC3\x81") == "\xC3\x81");  // Á unchanged
}
