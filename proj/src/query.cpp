// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/query.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>

namespace folio::query {

namespace {

using rdf::Term;
using rdf::Triple;

bool is_var_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_var_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct Token {
    std::string text;
    std::size_t offset;
    bool separator = false;  // a standalone '.'
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (text[i] == '.' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
            tokens.push_back({".", start, true});
            ++i;
            continue;
        }
        std::string token;
        if (text[i] == '"') {
            token += text[i++];
            bool closed = false;
            while (i < text.size()) {
                const char c = text[i++];
                token += c;
                if (c == '\\') {
                    if (i >= text.size())
                        throw SyntaxError(start, "truncated escape in literal");
                    token += text[i++];
                } else if (c == '"') {
                    closed = true;
                    break;
                }
            }
            if (!closed)
                throw SyntaxError(start, "unterminated literal");
            // optional @lang or ^^datatype glued to the closing quote
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                token += text[i++];
        } else if (text[i] == '<') {
            while (i < text.size() && text[i] != '>')
                token += text[i++];
            if (i >= text.size())
                throw SyntaxError(start, "unterminated IRI");
            token += text[i++];
        } else {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                token += text[i++];
        }
        // A '.' glued to the end of a term terminates the pattern, as in
        // Turtle. IRI tokens end at '>' and never absorb one.
        if (token.size() > 1 && token.back() == '.') {
            token.pop_back();
            const std::size_t dot = start + token.size();
            tokens.push_back({std::move(token), start, false});
            tokens.push_back({".", dot, true});
            continue;
        }
        tokens.push_back({std::move(token), start, false});
    }
    return tokens;
}

std::string unescape_literal(std::string_view body, std::size_t offset) {
    std::string out;
    for (std::size_t i = 0; i < body.size(); ++i) {
        if (body[i] != '\\') {
            out += body[i];
            continue;
        }
        if (i + 1 >= body.size())
            throw SyntaxError(offset, "truncated escape in literal");
        switch (body[++i]) {
        case 't': out += '\t'; break;
        case 'n': out += '\n'; break;
        case 'r': out += '\r'; break;
        case '"': out += '"'; break;
        case '\\': out += '\\'; break;
        default:
            throw SyntaxError(offset, "unknown escape in literal");
        }
    }
    return out;
}

PatternTerm parse_literal_token(const Token& token) {
    const std::string& text = token.text;
    std::size_t end = 1;
    while (end < text.size()) {
        if (text[end] == '\\')
            end += 2;
        else if (text[end] == '"')
            break;
        else
            ++end;
    }
    if (end >= text.size())
        throw SyntaxError(token.offset, "unterminated literal");
    const std::string lexical = unescape_literal(std::string_view(text).substr(1, end - 1), token.offset);
    const std::string_view suffix = std::string_view(text).substr(end + 1);

    PatternTerm term;
    if (suffix.empty()) {
        term.term = Term::literal(lexical);
        return term;
    }
    if (suffix[0] == '@') {
        const std::string_view lang = suffix.substr(1);
        if (lang.empty())
            throw SyntaxError(token.offset, "empty language tag");
        for (const char c : lang)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '-'))
                throw SyntaxError(token.offset, "bad language tag");
        term.term = Term::lang_literal(lexical, std::string(lang));
        return term;
    }
    if (suffix.size() > 2 && suffix[0] == '^' && suffix[1] == '^') {
        const std::string_view dt = suffix.substr(2);
        if (dt.size() > 2 && dt.front() == '<' && dt.back() == '>') {
            term.term = Term::typed_literal(lexical, std::string(dt.substr(1, dt.size() - 2)));
            return term;
        }
        if (const std::optional<std::string> iri = rdf::expand_prefixed_name(dt)) {
            term.term = Term::typed_literal(lexical, *iri);
            return term;
        }
        throw SyntaxError(token.offset, "unknown datatype '" + std::string(dt) + "'");
    }
    throw SyntaxError(token.offset, "unexpected literal suffix '" + std::string(suffix) + "'");
}

PatternTerm parse_term(const Token& token) {
    const std::string& text = token.text;
    PatternTerm term;
    if (text[0] == '?') {
        const std::string name = text.substr(1);
        if (name.empty() || !is_var_start(name[0]) ||
            !std::all_of(name.begin(), name.end(), [](char c) { return is_var_char(c); }))
            throw SyntaxError(token.offset, "bad variable name '" + text + "'");
        term.var = name;
        return term;
    }
    if (text[0] == '"')
        return parse_literal_token(token);
    if (text.front() == '<' && text.back() == '>' && text.size() > 2) {
        term.term = Term::iri(text.substr(1, text.size() - 2));
        return term;
    }
    if (text == "a") {
        term.term = Term::iri(rdf::kRdfType);
        return term;
    }
    if (const std::optional<std::string> iri = rdf::expand_prefixed_name(text)) {
        term.term = Term::iri(*iri);
        return term;
    }
    throw SyntaxError(token.offset, "unrecognized term '" + text + "'");
}

}  // namespace

std::vector<TriplePattern> parse_query(std::string_view text) {
    const std::vector<Token> tokens = tokenize(text);
    std::vector<TriplePattern> patterns;
    std::vector<PatternTerm> pending;
    std::size_t group_offset = 0;

    const auto flush = [&](std::size_t at) {
        if (pending.size() != 3)
            throw SyntaxError(pending.empty() ? at : group_offset,
                              "pattern needs 3 terms, found " + std::to_string(pending.size()));
        TriplePattern pattern{pending[0], pending[1], pending[2]};
        if (pattern.subject.term && pattern.subject.term->is_literal())
            throw SyntaxError(group_offset, "literal cannot be a subject");
        if (pattern.predicate.term && !pattern.predicate.term->is_iri())
            throw SyntaxError(group_offset, "predicate must be an IRI or variable");
        patterns.push_back(std::move(pattern));
        pending.clear();
    };

    for (const Token& token : tokens) {
        if (token.separator) {
            flush(token.offset);
            continue;
        }
        if (pending.empty())
            group_offset = token.offset;
        pending.push_back(parse_term(token));
        if (pending.size() > 3)
            throw SyntaxError(token.offset, "pattern has more than 3 terms (missing '.'?)");
    }
    if (!pending.empty())
        flush(text.size());
    if (patterns.empty())
        throw SyntaxError(0, "empty query");
    return patterns;
}

namespace {

using Bindings = std::map<std::string, Term>;

std::optional<Term> resolve(const PatternTerm& term, const Bindings& bindings) {
    if (term.term)
        return term.term;
    const auto it = bindings.find(term.var);
    if (it != bindings.end())
        return it->second;
    return std::nullopt;
}

// Binds one position of a matched triple, rejecting conflicts from a
// variable repeated within the same pattern.
bool bind(const PatternTerm& pattern, const Term& value, Bindings& bindings) {
    if (pattern.term)
        return true;
    const auto [it, inserted] = bindings.emplace(pattern.var, value);
    return inserted || it->second == value;
}

void join(const std::vector<TriplePattern>& order, std::size_t depth, const rdf::KnowledgeGraph& graph,
          Bindings& bindings, const std::vector<std::string>& variables,
          std::vector<std::vector<Term>>& rows) {
    if (depth == order.size()) {
        std::vector<Term> row;
        row.reserve(variables.size());
        for (const std::string& var : variables)
            row.push_back(bindings.at(var));
        rows.push_back(std::move(row));
        return;
    }
    const TriplePattern& pattern = order[depth];
    for (const Triple& triple :
         graph.match(resolve(pattern.subject, bindings), resolve(pattern.predicate, bindings),
                     resolve(pattern.object, bindings))) {
        Bindings extended = bindings;
        if (!bind(pattern.subject, triple.subject, extended) ||
            !bind(pattern.predicate, triple.predicate, extended) || !bind(pattern.object, triple.object, extended))
            continue;
        join(order, depth + 1, graph, extended, variables, rows);
    }
}

}  // namespace

BindingSet evaluate(const std::vector<TriplePattern>& patterns, const rdf::KnowledgeGraph& graph) {
    BindingSet result;
    for (const TriplePattern& pattern : patterns)
        for (const PatternTerm* term : {&pattern.subject, &pattern.predicate, &pattern.object})
            if (term->is_variable() &&
                std::find(result.variables.begin(), result.variables.end(), term->var) == result.variables.end())
                result.variables.push_back(term->var);

    // Static join order: most selective first, original order on ties.
    std::vector<std::size_t> order(patterns.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<std::size_t> counts(patterns.size());
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const TriplePattern& p = patterns[i];
        counts[i] = graph.count_matching(p.subject.term, p.predicate.term, p.object.term);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return counts[a] < counts[b]; });
    std::vector<TriplePattern> ordered;
    ordered.reserve(patterns.size());
    for (const std::size_t idx : order)
        ordered.push_back(patterns[idx]);

    Bindings bindings;
    join(ordered, 0, graph, bindings, result.variables, result.solutions);

    // Deterministic output: rows sorted by serialized terms, duplicates
    // dropped.
    const auto row_key = [](const std::vector<Term>& row) {
        std::string key;
        for (const Term& term : row) {
            key += rdf::serialize_term(term);
            key += '\t';
        }
        return key;
    };
    std::sort(result.solutions.begin(), result.solutions.end(),
              [&](const std::vector<Term>& a, const std::vector<Term>& b) { return row_key(a) < row_key(b); });
    result.solutions.erase(std::unique(result.solutions.begin(), result.solutions.end()), result.solutions.end());
    return result;
}

std::string to_tsv(const BindingSet& bindings) {
    std::string out;
    for (std::size_t i = 0; i < bindings.variables.size(); ++i) {
        if (i)
            out += '\t';
        out += "?" + bindings.variables[i];
    }
    out += '\n';
    for (const std::vector<rdf::Term>& row : bindings.solutions) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += '\t';
            out += rdf::serialize_term(row[i]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace folio::query
