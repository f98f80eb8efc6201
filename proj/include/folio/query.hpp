// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// Basic-graph-pattern queries over knowledge graphs: conjunctive triple
// patterns with shared variables, no OPTIONAL/FILTER/UNION.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "folio/error.hpp"
#include "folio/rdf.hpp"

namespace folio::query {

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : Error("E_QUERY_SYNTAX", "offset " + std::to_string(position) + ": " + message), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// One position of a pattern: either a concrete term or a variable.
struct PatternTerm {
    std::optional<rdf::Term> term;
    std::string var;  // set iff term is empty, without the '?' sigil

    bool is_variable() const { return !term.has_value(); }
    bool operator==(const PatternTerm&) const = default;
};

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;

    bool operator==(const TriplePattern&) const = default;
};

// Grammar: patterns separated by `.`; terms are `<IRI>`, prefixed names
// from the fixed prefix table, `a` for rdf:type, quoted literals (with
// optional `^^datatype` or `@lang`), or `?var`.
std::vector<TriplePattern> parse_query(std::string_view text);

// Solutions over the variables of the query, in first-occurrence order.
// Rows are duplicate-free and sorted by the serialized terms.
struct BindingSet {
    std::vector<std::string> variables;
    std::vector<std::vector<rdf::Term>> solutions;  // each row aligned with `variables`

    bool operator==(const BindingSet&) const = default;
};

// Index-backed nested-loop join, most selective pattern first. Every
// returned row substituted into every pattern yields a graph triple.
BindingSet evaluate(const std::vector<TriplePattern>& patterns, const rdf::KnowledgeGraph& graph);

// Tab-separated table: header row of variable names, then one row per
// solution with N-Triples serialized terms.
std::string to_tsv(const BindingSet& bindings);

}  // namespace folio::query
