// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/rdf.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "folio/unicode.hpp"

namespace folio::rdf {

namespace {

bool is_absolute_iri(std::string_view iri) {
    // scheme ":" per RFC 3987: ALPHA *(ALPHA / DIGIT / "+" / "-" / ".")
    if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri[0])))
        return false;
    for (std::size_t i = 1; i < iri.size(); ++i) {
        const char c = iri[i];
        if (c == ':')
            return true;
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.')
            return false;
    }
    return false;
}

}  // namespace

Term Term::iri(std::string value) {
    Term term;
    term.kind = TermKind::kIri;
    term.value = std::move(value);
    return term;
}

Term Term::blank(std::string label) {
    Term term;
    term.kind = TermKind::kBlankNode;
    term.value = std::move(label);
    return term;
}

Term Term::literal(std::string lexical) {
    Term term;
    term.kind = TermKind::kLiteral;
    term.value = std::move(lexical);
    term.datatype = kXsdString;
    return term;
}

Term Term::typed_literal(std::string lexical, std::string datatype) {
    Term term;
    term.kind = TermKind::kLiteral;
    term.value = std::move(lexical);
    term.datatype = std::move(datatype);
    return term;
}

Term Term::lang_literal(std::string lexical, std::string lang) {
    Term term;
    term.kind = TermKind::kLiteral;
    term.value = std::move(lexical);
    term.datatype = kRdfLangString;
    term.lang = std::move(lang);
    return term;
}

bool KnowledgeGraph::PosLess::operator()(const Triple* a, const Triple* b) const {
    return std::tie(a->predicate, a->object, a->subject) < std::tie(b->predicate, b->object, b->subject);
}
bool KnowledgeGraph::PosLess::operator()(const Triple* a, const Term& p) const {
    return a->predicate < p;
}
bool KnowledgeGraph::PosLess::operator()(const Term& p, const Triple* b) const {
    return p < b->predicate;
}

bool KnowledgeGraph::OspLess::operator()(const Triple* a, const Triple* b) const {
    return std::tie(a->object, a->subject, a->predicate) < std::tie(b->object, b->subject, b->predicate);
}
bool KnowledgeGraph::OspLess::operator()(const Triple* a, const Term& o) const {
    return a->object < o;
}
bool KnowledgeGraph::OspLess::operator()(const Term& o, const Triple* b) const {
    return o < b->object;
}

KnowledgeGraph::KnowledgeGraph(const KnowledgeGraph& other) : triples_(other.triples_) {
    reindex();
}

KnowledgeGraph& KnowledgeGraph::operator=(const KnowledgeGraph& other) {
    if (this != &other) {
        triples_ = other.triples_;
        reindex();
    }
    return *this;
}

void KnowledgeGraph::reindex() {
    pos_.clear();
    osp_.clear();
    for (const Triple& triple : triples_) {
        pos_.insert(&triple);
        osp_.insert(&triple);
    }
}

bool KnowledgeGraph::insert(Triple triple) {
    if (triple.subject.is_literal())
        throw TermError("triple subject must be an IRI or blank node");
    if (!triple.predicate.is_iri())
        throw TermError("triple predicate must be an IRI");
    if (triple.subject.is_iri() && !is_absolute_iri(triple.subject.value))
        throw TermError("subject IRI '" + triple.subject.value + "' is not absolute");
    if (!is_absolute_iri(triple.predicate.value))
        throw TermError("predicate IRI '" + triple.predicate.value + "' is not absolute");
    if (triple.object.is_iri() && !is_absolute_iri(triple.object.value))
        throw TermError("object IRI '" + triple.object.value + "' is not absolute");

    auto [it, inserted] = triples_.insert(std::move(triple));
    if (inserted) {
        pos_.insert(&*it);
        osp_.insert(&*it);
    }
    return inserted;
}

bool KnowledgeGraph::contains(const Triple& triple) const {
    return triples_.count(triple) > 0;
}

std::vector<Triple> KnowledgeGraph::match(const std::optional<Term>& s, const std::optional<Term>& p,
                                          const std::optional<Term>& o) const {
    std::vector<Triple> out;
    const auto keep = [&](const Triple& t) {
        return (!s || t.subject == *s) && (!p || t.predicate == *p) && (!o || t.object == *o);
    };
    if (s) {
        // SPO: subject-prefixed range of the primary set.
        for (auto it = triples_.lower_bound(Triple{*s, Term{}, Term{}}); it != triples_.end() && it->subject == *s;
             ++it)
            if (keep(*it))
                out.push_back(*it);
        return out;
    }
    if (p) {
        const auto [lo, hi] = pos_.equal_range(*p);
        for (auto it = lo; it != hi; ++it)
            if (keep(**it))
                out.push_back(**it);
        std::sort(out.begin(), out.end());
        return out;
    }
    if (o) {
        const auto [lo, hi] = osp_.equal_range(*o);
        for (auto it = lo; it != hi; ++it)
            if (keep(**it))
                out.push_back(**it);
        std::sort(out.begin(), out.end());
        return out;
    }
    out.assign(triples_.begin(), triples_.end());
    return out;
}

std::size_t KnowledgeGraph::count_matching(const std::optional<Term>& s, const std::optional<Term>& p,
                                           const std::optional<Term>& o) const {
    return match(s, p, o).size();
}

void KnowledgeGraph::merge(const KnowledgeGraph& other) {
    for (const Triple& triple : other.triples())
        insert(triple);
}

std::string escape_literal(std::string_view lexical) {
    std::string out;
    out.reserve(lexical.size());
    for (const char c : lexical) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out;
}

std::string serialize_term(const Term& term) {
    switch (term.kind) {
    case TermKind::kIri:
        return "<" + term.value + ">";
    case TermKind::kBlankNode:
        return "_:" + term.value;
    case TermKind::kLiteral:
        break;
    }
    std::string out = "\"" + escape_literal(term.value) + "\"";
    if (!term.lang.empty())
        return out + "@" + term.lang;
    if (term.datatype != kXsdString)
        out += "^^<" + term.datatype + ">";
    return out;
}

std::string serialize_ntriples(const KnowledgeGraph& graph) {
    std::vector<std::string> lines;
    lines.reserve(graph.size());
    for (const Triple& triple : graph.triples())
        lines.push_back(serialize_term(triple.subject) + " " + serialize_term(triple.predicate) + " " +
                        serialize_term(triple.object) + " .");
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const std::string& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

namespace {

// Line-oriented N-Triples reader.
class NtLineParser {
public:
    NtLineParser(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    Triple parse() {
        Triple triple;
        skip_ws();
        triple.subject = parse_subject();
        skip_ws();
        triple.predicate = parse_iri_term();
        skip_ws();
        triple.object = parse_object();
        skip_ws();
        if (!consume('.'))
            fail("expected '.' after object");
        skip_ws();
        if (pos_ != line_.size())
            fail("trailing content after '.'");
        return triple;
    }

private:
    [[noreturn]] void fail(const std::string& message) const {
        throw ParseError(line_no_, message);
    }

    void skip_ws() {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t'))
            ++pos_;
    }

    bool consume(char c) {
        if (pos_ < line_.size() && line_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Term parse_subject() {
        if (pos_ < line_.size() && line_[pos_] == '<')
            return parse_iri_term();
        if (pos_ + 1 < line_.size() && line_[pos_] == '_' && line_[pos_ + 1] == ':')
            return parse_blank();
        fail("expected IRI or blank node subject");
    }

    Term parse_object() {
        if (pos_ >= line_.size())
            fail("missing object");
        if (line_[pos_] == '<')
            return parse_iri_term();
        if (line_[pos_] == '"')
            return parse_literal();
        if (pos_ + 1 < line_.size() && line_[pos_] == '_' && line_[pos_ + 1] == ':')
            return parse_blank();
        fail("expected IRI, blank node, or literal object");
    }

    Term parse_iri_term() {
        if (!consume('<'))
            fail("expected '<'");
        std::string iri;
        while (pos_ < line_.size() && line_[pos_] != '>')
            iri += line_[pos_++];
        if (!consume('>'))
            fail("unterminated IRI");
        return Term::iri(std::move(iri));
    }

    Term parse_blank() {
        pos_ += 2;  // "_:"
        std::string label;
        while (pos_ < line_.size() && (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '_' ||
                                       line_[pos_] == '-' || line_[pos_] == '.'))
            label += line_[pos_++];
        if (label.empty())
            fail("empty blank node label");
        return Term::blank(std::move(label));
    }

    unsigned hex_digits(std::size_t count) {
        unsigned value = 0;
        for (std::size_t i = 0; i < count; ++i) {
            if (pos_ >= line_.size())
                fail("truncated \\u escape");
            const char c = line_[pos_++];
            value <<= 4;
            if (c >= '0' && c <= '9')
                value |= static_cast<unsigned>(c - '0');
            else if (c >= 'a' && c <= 'f')
                value |= static_cast<unsigned>(c - 'a' + 10);
            else if (c >= 'A' && c <= 'F')
                value |= static_cast<unsigned>(c - 'A' + 10);
            else
                fail("bad hex digit in escape");
        }
        return value;
    }

    Term parse_literal() {
        consume('"');
        std::string lexical;
        for (;;) {
            if (pos_ >= line_.size())
                fail("unterminated literal");
            const char c = line_[pos_++];
            if (c == '"')
                break;
            if (c != '\\') {
                lexical += c;
                continue;
            }
            if (pos_ >= line_.size())
                fail("truncated escape");
            const char esc = line_[pos_++];
            switch (esc) {
            case 't': lexical += '\t'; break;
            case 'b': lexical += '\b'; break;
            case 'n': lexical += '\n'; break;
            case 'r': lexical += '\r'; break;
            case 'f': lexical += '\f'; break;
            case '"': lexical += '"'; break;
            case '\'': lexical += '\''; break;
            case '\\': lexical += '\\'; break;
            case 'u': unicode::append_utf8(lexical, hex_digits(4)); break;
            case 'U': unicode::append_utf8(lexical, hex_digits(8)); break;
            default: fail("unknown escape in literal");
            }
        }
        if (consume('@')) {
            std::string lang;
            while (pos_ < line_.size() &&
                   (std::isalnum(static_cast<unsigned char>(line_[pos_])) || line_[pos_] == '-'))
                lang += line_[pos_++];
            if (lang.empty())
                fail("empty language tag");
            return Term::lang_literal(std::move(lexical), std::move(lang));
        }
        if (pos_ + 1 < line_.size() && line_[pos_] == '^' && line_[pos_ + 1] == '^') {
            pos_ += 2;
            Term dt = parse_iri_term();
            return Term::typed_literal(std::move(lexical), std::move(dt.value));
        }
        return Term::literal(std::move(lexical));
    }

    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

}  // namespace

KnowledgeGraph parse_ntriples(std::string_view text) {
    KnowledgeGraph graph;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        std::size_t i = 0;
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t'))
            ++i;
        if (i == line.size() || line[i] == '#')
            continue;
        try {
            graph.insert(NtLineParser(line, line_no).parse());
        } catch (const TermError& e) {
            throw ParseError(line_no, e.what());
        }
        if (start > text.size())
            break;
    }
    return graph;
}

const std::vector<PrefixEntry>& prefix_table() {
    static const std::vector<PrefixEntry> table = {
        {"jdlo", "https://example.org/jdl/ontology#"},
        {"jdlr", "https://example.org/jdl/resource/"},
        {"dcterms", "http://purl.org/dc/terms/"},
        {"rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"},
        {"xsd", "http://www.w3.org/2001/XMLSchema#"},
        {"owl", "http://www.w3.org/2002/07/owl#"},
    };
    return table;
}

std::optional<std::string> expand_prefixed_name(std::string_view name) {
    const std::size_t colon = name.find(':');
    if (colon == std::string_view::npos)
        return std::nullopt;
    const std::string_view prefix = name.substr(0, colon);
    const std::string_view local = name.substr(colon + 1);
    for (const PrefixEntry& entry : prefix_table())
        if (prefix == entry.prefix)
            return std::string(entry.base) + std::string(local);
    return std::nullopt;
}

namespace {

// A local name is abbreviated only when it fits the conservative subset of
// PN_LOCAL that needs no escaping.
bool is_safe_local(std::string_view local) {
    if (local.empty())
        return false;
    if (!(std::isalpha(static_cast<unsigned char>(local[0])) || local[0] == '_'))
        return false;
    for (const char c : local)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'))
            return false;
    return true;
}

std::string turtle_iri(const std::string& iri) {
    for (const PrefixEntry& entry : prefix_table()) {
        const std::string_view base = entry.base;
        if (iri.size() > base.size() && std::string_view(iri).substr(0, base.size()) == base) {
            const std::string_view local = std::string_view(iri).substr(base.size());
            if (is_safe_local(local))
                return std::string(entry.prefix) + ":" + std::string(local);
        }
    }
    return "<" + iri + ">";
}

std::string turtle_term(const Term& term) {
    switch (term.kind) {
    case TermKind::kIri:
        return turtle_iri(term.value);
    case TermKind::kBlankNode:
        return "_:" + term.value;
    case TermKind::kLiteral:
        break;
    }
    std::string out = "\"" + escape_literal(term.value) + "\"";
    if (!term.lang.empty())
        return out + "@" + term.lang;
    if (term.datatype != kXsdString)
        out += "^^" + turtle_iri(term.datatype);
    return out;
}

}  // namespace

std::string serialize_turtle(const KnowledgeGraph& graph) {
    std::string out;
    for (const PrefixEntry& entry : prefix_table())
        out += "@prefix " + std::string(entry.prefix) + ": <" + entry.base + "> .\n";

    // subject (by serialized byte order) -> predicate IRI -> serialized objects
    std::map<std::string, std::map<std::string, std::vector<std::string>>> blocks;
    std::map<std::string, const Term*> subjects;
    for (const Triple& triple : graph.triples()) {
        const std::string skey = serialize_term(triple.subject);
        subjects.emplace(skey, &triple.subject);
        blocks[skey][triple.predicate.value].push_back(turtle_term(triple.object));
    }
    for (auto& [skey, preds] : blocks) {
        out += "\n" + turtle_term(*subjects.at(skey));
        bool first_pred = true;
        for (auto& [pred, objects] : preds) {
            out += first_pred ? " " : " ;\n    ";
            first_pred = false;
            out += turtle_iri(pred);
            std::sort(objects.begin(), objects.end());
            for (std::size_t i = 0; i < objects.size(); ++i)
                out += (i == 0 ? " " : ", ") + objects[i];
        }
        out += " .\n";
    }
    return out;
}

}  // namespace folio::rdf
