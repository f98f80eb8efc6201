// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "folio/error.hpp"

namespace folio::xml {

class MalformedError : public Error {
public:
    MalformedError(const std::string& message, std::size_t offset)
        : Error("E_XML_MALFORMED", message + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

struct Attribute {
    std::string name;    // as written, possibly prefixed
    std::string ns_uri;  // resolved namespace, empty for unprefixed attributes
    std::string local;
    std::string value;
};

/// One element of a parsed document. Namespace prefixes are resolved from
/// in-scope xmlns declarations; an unbound prefix leaves ns_uri empty rather
/// than failing, which matches how tolerant harvesters treat real-world feeds.
struct Element {
    std::string name;  // as written
    std::string ns_uri;
    std::string local;
    std::vector<Attribute> attributes;
    std::vector<std::variant<std::unique_ptr<Element>, std::string>> children;
    std::size_t begin = 0;  // byte offset of '<' in the source buffer
    std::size_t end = 0;    // one past the closing '>' in the source buffer

    const std::string* attribute(std::string_view attr_name) const;
    const Element* first_child(std::string_view ns, std::string_view local_name) const;
    std::vector<const Element*> children_named(std::string_view ns, std::string_view local_name) const;
    std::vector<const Element*> child_elements() const;

    /// Concatenated text of all descendant text nodes.
    std::string text() const;
};

struct Document {
    std::unique_ptr<Element> root;
};

/// Parses a UTF-8 XML document: elements, attributes, character data,
/// comments, PIs, CDATA sections and the five predefined plus numeric
/// character references. Throws MalformedError on anything else.
Document parse(std::string_view input);

}  // namespace folio::xml
