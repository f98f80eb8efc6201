// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/xml.hpp"

#include <map>
#include <utility>

#include "folio/unicode.hpp"

namespace folio::xml {

namespace {

bool is_name_start(unsigned char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_' || c == ':' || c >= 0x80;
}

bool is_name_char(unsigned char c) {
    return is_name_start(c) || (c >= '0' && c <= '9') || c == '-' || c == '.';
}

bool is_space(unsigned char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
}

class Parser {
public:
    explicit Parser(std::string_view input) : in_(input) {}

    Document run() {
        if (!unicode::is_valid_utf8(in_))
            fail("document is not valid UTF-8", 0);
        skip_bom();
        skip_misc();
        if (pos_ >= in_.size() || in_[pos_] != '<')
            fail("expected document element");
        Document doc;
        NamespaceScope scope;
        doc.root = parse_element(scope);
        skip_misc();
        if (pos_ != in_.size())
            fail("content after document element");
        return doc;
    }

private:
    // Prefix bindings form a stack of scopes; lookups walk outward.
    struct NamespaceScope {
        const NamespaceScope* parent = nullptr;
        std::map<std::string, std::string, std::less<>> bindings;

        std::string resolve(std::string_view prefix) const {
            for (const NamespaceScope* s = this; s != nullptr; s = s->parent) {
                auto it = s->bindings.find(prefix);
                if (it != s->bindings.end())
                    return it->second;
            }
            return {};
        }
    };

    [[noreturn]] void fail(const std::string& message) const { fail(message, pos_); }

    [[noreturn]] static void fail(const std::string& message, std::size_t offset) {
        throw MalformedError(message, offset);
    }

    void skip_bom() {
        if (in_.substr(0, 3) == "\xEF\xBB\xBF")
            pos_ = 3;
    }

    void skip_spaces() {
        while (pos_ < in_.size() && is_space(static_cast<unsigned char>(in_[pos_])))
            ++pos_;
    }

    // Whitespace, comments, PIs and the XML declaration outside the root.
    void skip_misc() {
        for (;;) {
            skip_spaces();
            if (in_.compare(pos_, 4, "<!--") == 0)
                skip_comment();
            else if (in_.compare(pos_, 2, "<?") == 0)
                skip_pi();
            else if (in_.compare(pos_, 9, "<!DOCTYPE") == 0)
                skip_doctype();
            else
                return;
        }
    }

    void skip_comment() {
        const std::size_t end = in_.find("-->", pos_ + 4);
        if (end == std::string_view::npos)
            fail("unterminated comment");
        pos_ = end + 3;
    }

    void skip_pi() {
        const std::size_t end = in_.find("?>", pos_ + 2);
        if (end == std::string_view::npos)
            fail("unterminated processing instruction");
        pos_ = end + 2;
    }

    // Internal subsets are not supported; a bracketed DTD is rejected.
    void skip_doctype() {
        const std::size_t end = in_.find('>', pos_);
        if (end == std::string_view::npos)
            fail("unterminated DOCTYPE");
        if (in_.substr(pos_, end - pos_).find('[') != std::string_view::npos)
            fail("DOCTYPE internal subsets are not supported");
        pos_ = end + 1;
    }

    std::string parse_name() {
        const std::size_t start = pos_;
        if (pos_ >= in_.size() || !is_name_start(static_cast<unsigned char>(in_[pos_])))
            fail("expected a name");
        while (pos_ < in_.size() && is_name_char(static_cast<unsigned char>(in_[pos_])))
            ++pos_;
        return std::string(in_.substr(start, pos_ - start));
    }

    char32_t parse_char_reference(std::size_t semi) {
        std::string_view body = in_.substr(pos_ + 2, semi - pos_ - 2);
        const bool hex = !body.empty() && (body[0] == 'x' || body[0] == 'X');
        if (hex)
            body.remove_prefix(1);
        if (body.empty())
            fail("empty character reference");
        char32_t cp = 0;
        for (char c : body) {
            int digit;
            if (c >= '0' && c <= '9')
                digit = c - '0';
            else if (hex && c >= 'a' && c <= 'f')
                digit = c - 'a' + 10;
            else if (hex && c >= 'A' && c <= 'F')
                digit = c - 'A' + 10;
            else
                fail("bad character reference");
            cp = cp * (hex ? 16 : 10) + static_cast<char32_t>(digit);
            if (cp > 0x10FFFF)
                fail("character reference out of range");
        }
        if (cp == 0 || (cp >= 0xD800 && cp <= 0xDFFF))
            fail("character reference out of range");
        return cp;
    }

    // Appends the expansion of the reference starting at pos_ ('&').
    void parse_reference(std::string& out) {
        const std::size_t semi = in_.find(';', pos_);
        if (semi == std::string_view::npos || semi - pos_ > 12)
            fail("unterminated entity reference");
        const std::string_view entity = in_.substr(pos_ + 1, semi - pos_ - 1);
        if (entity == "lt")
            out.push_back('<');
        else if (entity == "gt")
            out.push_back('>');
        else if (entity == "amp")
            out.push_back('&');
        else if (entity == "apos")
            out.push_back('\'');
        else if (entity == "quot")
            out.push_back('"');
        else if (!entity.empty() && entity[0] == '#')
            out += unicode::encode_utf8(std::u32string(1, parse_char_reference(semi)));
        else
            fail("unknown entity '&" + std::string(entity) + ";'");
        pos_ = semi + 1;
    }

    std::string parse_attribute_value() {
        if (pos_ >= in_.size() || (in_[pos_] != '"' && in_[pos_] != '\''))
            fail("expected quoted attribute value");
        const char quote = in_[pos_++];
        std::string value;
        while (pos_ < in_.size() && in_[pos_] != quote) {
            if (in_[pos_] == '<')
                fail("'<' in attribute value");
            if (in_[pos_] == '&')
                parse_reference(value);
            else
                value.push_back(in_[pos_++]);
        }
        if (pos_ >= in_.size())
            fail("unterminated attribute value");
        ++pos_;  // closing quote
        return value;
    }

    static std::pair<std::string, std::string> split_qname(const std::string& name, std::size_t offset) {
        const std::size_t colon = name.find(':');
        if (colon == std::string::npos)
            return {"", name};
        if (colon == 0 || colon + 1 == name.size() || name.find(':', colon + 1) != std::string::npos)
            fail("malformed qualified name '" + name + "'", offset);
        return {name.substr(0, colon), name.substr(colon + 1)};
    }

    std::unique_ptr<Element> parse_element(const NamespaceScope& parent_scope) {
        auto element = std::make_unique<Element>();
        element->begin = pos_;
        ++pos_;  // '<'
        element->name = parse_name();

        NamespaceScope scope;
        scope.parent = &parent_scope;
        std::vector<std::string> attr_prefixes;

        bool self_closing = false;
        for (;;) {
            const bool had_space = pos_ < in_.size() && is_space(static_cast<unsigned char>(in_[pos_]));
            skip_spaces();
            if (pos_ >= in_.size())
                fail("unterminated start tag");
            if (in_[pos_] == '>') {
                ++pos_;
                break;
            }
            if (in_.compare(pos_, 2, "/>") == 0) {
                pos_ += 2;
                self_closing = true;
                break;
            }
            if (!had_space)
                fail("expected whitespace before attribute");
            const std::size_t name_offset = pos_;
            std::string name = parse_name();
            skip_spaces();
            if (pos_ >= in_.size() || in_[pos_] != '=')
                fail("expected '=' after attribute name");
            ++pos_;
            skip_spaces();
            std::string value = parse_attribute_value();
            if (name == "xmlns") {
                scope.bindings[""] = value;
                continue;
            }
            if (name.rfind("xmlns:", 0) == 0) {
                scope.bindings[name.substr(6)] = value;
                continue;
            }
            for (const Attribute& existing : element->attributes)
                if (existing.name == name)
                    fail("duplicate attribute '" + name + "'", name_offset);
            auto [prefix, local] = split_qname(name, name_offset);
            Attribute attr;
            attr.name = std::move(name);
            attr.local = local;
            attr.value = std::move(value);
            element->attributes.push_back(std::move(attr));
            attr_prefixes.push_back(prefix);
        }

        auto [prefix, local] = split_qname(element->name, element->begin);
        element->local = local;
        element->ns_uri = scope.resolve(prefix);
        for (std::size_t i = 0; i < element->attributes.size(); ++i)
            if (!attr_prefixes[i].empty())
                element->attributes[i].ns_uri = scope.resolve(attr_prefixes[i]);

        if (self_closing) {
            element->end = pos_;
            return element;
        }

        std::string pending_text;
        auto flush_text = [&] {
            if (!pending_text.empty()) {
                element->children.emplace_back(std::move(pending_text));
                pending_text.clear();
            }
        };

        for (;;) {
            if (pos_ >= in_.size())
                fail("unterminated element '" + element->name + "'");
            if (in_[pos_] == '<') {
                if (in_.compare(pos_, 2, "</") == 0) {
                    flush_text();
                    pos_ += 2;
                    const std::string closing = parse_name();
                    if (closing != element->name)
                        fail("mismatched closing tag '" + closing + "' for '" + element->name + "'");
                    skip_spaces();
                    if (pos_ >= in_.size() || in_[pos_] != '>')
                        fail("malformed closing tag");
                    ++pos_;
                    element->end = pos_;
                    return element;
                }
                if (in_.compare(pos_, 4, "<!--") == 0) {
                    skip_comment();
                    continue;
                }
                if (in_.compare(pos_, 9, "<![CDATA[") == 0) {
                    const std::size_t end = in_.find("]]>", pos_ + 9);
                    if (end == std::string_view::npos)
                        fail("unterminated CDATA section");
                    pending_text += in_.substr(pos_ + 9, end - pos_ - 9);
                    pos_ = end + 3;
                    continue;
                }
                if (in_.compare(pos_, 2, "<?") == 0) {
                    skip_pi();
                    continue;
                }
                flush_text();
                element->children.emplace_back(parse_element(scope));
                continue;
            }
            if (in_[pos_] == '&') {
                parse_reference(pending_text);
                continue;
            }
            pending_text.push_back(in_[pos_++]);
        }
    }

    std::string_view in_;
    std::size_t pos_ = 0;
};

}  // namespace

const std::string* Element::attribute(std::string_view attr_name) const {
    for (const Attribute& attr : attributes)
        if (attr.name == attr_name)
            return &attr.value;
    return nullptr;
}

const Element* Element::first_child(std::string_view ns, std::string_view local_name) const {
    for (const auto& child : children) {
        if (const auto* p = std::get_if<std::unique_ptr<Element>>(&child)) {
            if ((*p)->ns_uri == ns && (*p)->local == local_name)
                return p->get();
        }
    }
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view ns, std::string_view local_name) const {
    std::vector<const Element*> out;
    for (const auto& child : children)
        if (const auto* p = std::get_if<std::unique_ptr<Element>>(&child))
            if ((*p)->ns_uri == ns && (*p)->local == local_name)
                out.push_back(p->get());
    return out;
}

std::vector<const Element*> Element::child_elements() const {
    std::vector<const Element*> out;
    for (const auto& child : children)
        if (const auto* p = std::get_if<std::unique_ptr<Element>>(&child))
            out.push_back(p->get());
    return out;
}

std::string Element::text() const {
    std::string out;
    for (const auto& child : children) {
        if (const auto* s = std::get_if<std::string>(&child))
            out += *s;
        else
            out += std::get<std::unique_ptr<Element>>(child)->text();
    }
    return out;
}

Document parse(std::string_view input) {
    return Parser(input).run();
}

}  // namespace folio::xml
