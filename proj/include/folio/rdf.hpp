// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// RDF terms, triples, an indexed triple set, and the N-Triples / Turtle
// serializations. Output is canonical: serializing the same graph twice
// yields identical bytes.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "folio/error.hpp"

namespace folio::rdf {

inline constexpr char kXsdString[] = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr char kXsdInteger[] = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr char kXsdDecimal[] = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr char kXsdBoolean[] = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr char kRdfLangString[] = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";
inline constexpr char kRdfType[] = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr char kOwlSameAs[] = "http://www.w3.org/2002/07/owl#sameAs";

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("E_RDF_PARSE", "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class TermError : public Error {
public:
    explicit TermError(const std::string& message) : Error("E_RDF_TERM", message) {}
};

enum class TermKind { kIri, kBlankNode, kLiteral };

// One RDF term. Literals carry a datatype xor a language tag; a language
// tag implies datatype rdf:langString.
struct Term {
    TermKind kind = TermKind::kIri;
    std::string value;     // IRI, blank node label, or lexical form
    std::string datatype;  // literals only
    std::string lang;      // language-tagged literals only

    static Term iri(std::string value);
    static Term blank(std::string label);
    static Term literal(std::string lexical);  // plain, datatype xsd:string
    static Term typed_literal(std::string lexical, std::string datatype);
    static Term lang_literal(std::string lexical, std::string lang);

    bool is_iri() const { return kind == TermKind::kIri; }
    bool is_blank() const { return kind == TermKind::kBlankNode; }
    bool is_literal() const { return kind == TermKind::kLiteral; }

    bool operator==(const Term&) const = default;
    bool operator<(const Term& other) const {
        return std::tie(kind, value, datatype, lang) < std::tie(other.kind, other.value, other.datatype, other.lang);
    }
};

struct Triple {
    Term subject;    // IRI or blank node
    Term predicate;  // always an IRI
    Term object;

    bool operator==(const Triple&) const = default;
    bool operator<(const Triple& other) const {
        return std::tie(subject, predicate, object) < std::tie(other.subject, other.predicate, other.object);
    }
};

// Triple set with access paths on each position. Set semantics: inserting
// a triple twice leaves the graph unchanged.
class KnowledgeGraph {
public:
    KnowledgeGraph() = default;
    KnowledgeGraph(const KnowledgeGraph& other);
    KnowledgeGraph& operator=(const KnowledgeGraph& other);
    KnowledgeGraph(KnowledgeGraph&&) = default;
    KnowledgeGraph& operator=(KnowledgeGraph&&) = default;

    // Returns true when the triple was new. Rejects literal subjects and
    // non-IRI predicates.
    bool insert(Triple triple);
    bool contains(const Triple& triple) const;
    std::size_t size() const { return triples_.size(); }
    bool empty() const { return triples_.empty(); }

    // Triples in canonical (S, P, O) term order.
    const std::set<Triple>& triples() const { return triples_; }

    // All triples matching the bound positions, in canonical order. An
    // unbound position matches anything. The scan is index-backed on the
    // first bound position in S, P, O priority.
    std::vector<Triple> match(const std::optional<Term>& s, const std::optional<Term>& p,
                              const std::optional<Term>& o) const;
    std::size_t count_matching(const std::optional<Term>& s, const std::optional<Term>& p,
                               const std::optional<Term>& o) const;

    void merge(const KnowledgeGraph& other);

    bool operator==(const KnowledgeGraph& other) const { return triples_ == other.triples_; }

private:
    struct PosLess {
        using is_transparent = void;
        bool operator()(const Triple* a, const Triple* b) const;
        bool operator()(const Triple* a, const Term& p) const;
        bool operator()(const Term& p, const Triple* b) const;
    };
    struct OspLess {
        using is_transparent = void;
        bool operator()(const Triple* a, const Triple* b) const;
        bool operator()(const Triple* a, const Term& o) const;
        bool operator()(const Term& o, const Triple* b) const;
    };
    // The primary set is the SPO index; the secondary index sets hold
    // pointers into it, stable because std::set storage is node-based.
    std::set<Triple> triples_;
    std::set<const Triple*, PosLess> pos_;
    std::set<const Triple*, OspLess> osp_;

    void reindex();
};

// Canonical N-Triples form of one term.
std::string serialize_term(const Term& term);

// Literal body escaping: `"`, `\`, newline, carriage return, tab; all
// other bytes pass through raw.
std::string escape_literal(std::string_view lexical);

// One triple per line, lines sorted as byte strings, trailing newline on
// every line. The empty graph serializes to the empty string.
std::string serialize_ntriples(const KnowledgeGraph& graph);

// Inverse of serialize_ntriples; also accepts comments and blank lines.
KnowledgeGraph parse_ntriples(std::string_view text);

// Fixed prefix table shared by the Turtle writer and the query language.
struct PrefixEntry {
    const char* prefix;
    const char* base;
};
const std::vector<PrefixEntry>& prefix_table();

// Resolves "jdlo:Stamp" style names against the fixed prefix table.
std::optional<std::string> expand_prefixed_name(std::string_view name);

// Turtle with the fixed prefix block, subjects grouped and sorted,
// predicates sorted, semicolon/comma contractions.
std::string serialize_turtle(const KnowledgeGraph& graph);

}  // namespace folio::rdf
