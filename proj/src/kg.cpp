// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/kg.hpp"

#include <cstdio>

#include "folio/text.hpp"

namespace folio::kg {

namespace {

using annotations::PageDetections;
using annotations::Region;
using enrichment::EnrichedRecord;
using rdf::KnowledgeGraph;
using rdf::Term;
using rdf::Triple;

std::string encode_part(const std::string& part, const char* what) {
    if (part.empty())
        throw EmptyPart(std::string(what) + " must be non-empty");
    return text::percent_encode(part);
}

Term ontology_term(const char* local) {
    return Term::iri(std::string(kOntologyBase) + local);
}

Term dcterms_term(const char* local) {
    return Term::iri(std::string(kDcTermsBase) + local);
}

Term integer_literal(long long value) {
    return Term::typed_literal(std::to_string(value), rdf::kXsdInteger);
}

Term decimal_literal(double value) {
    return Term::typed_literal(decimal6(value), rdf::kXsdDecimal);
}

// Splits a manuscript-scoped "p<page>/<region-id>" back into its parts.
// enrich() produced these, so a malformed id means corrupted inputs.
std::pair<int, std::string> split_scoped_id(const std::string& scoped) {
    const std::size_t slash = scoped.find('/');
    if (scoped.size() < 3 || scoped[0] != 'p' || slash == std::string::npos || slash + 1 >= scoped.size())
        throw Error("E_KG_BAD_ASSIGNMENT", "malformed section assignment id '" + scoped + "'");
    int page = 0;
    for (std::size_t i = 1; i < slash; ++i) {
        if (scoped[i] < '0' || scoped[i] > '9')
            throw Error("E_KG_BAD_ASSIGNMENT", "malformed section assignment id '" + scoped + "'");
        page = page * 10 + (scoped[i] - '0');
    }
    if (page < 1)
        throw Error("E_KG_BAD_ASSIGNMENT", "malformed section assignment id '" + scoped + "'");
    return {page, scoped.substr(slash + 1)};
}

}  // namespace

std::string decimal6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

std::string mint_manuscript_iri(const std::string& manuscript_id) {
    return std::string(kResourceBase) + "ms/" + encode_part(manuscript_id, "manuscript id");
}

std::string mint_page_iri(const std::string& manuscript_id, int page_number) {
    return mint_manuscript_iri(manuscript_id) + "/page/" + std::to_string(page_number);
}

std::string mint_region_iri(const std::string& manuscript_id, int page_number, const std::string& region_id) {
    return mint_page_iri(manuscript_id, page_number) + "/region/" + encode_part(region_id, "region id");
}

std::string mint_class_iri(const std::string& name) {
    return std::string(kOntologyBase) + encode_part(name, "class name");
}

std::string mint_property_iri(const std::string& name) {
    return std::string(kOntologyBase) + encode_part(name, "property name");
}

std::string mint_agent_iri(const std::string& label) {
    return std::string(kResourceBase) + "agent/" + encode_part(label, "agent label");
}

std::string mint_concept_iri(const std::string& label) {
    return std::string(kResourceBase) + "concept/" + encode_part(label, "concept label");
}

KnowledgeGraph build_graph(const EnrichedRecord& enriched, const std::vector<PageDetections>& pages) {
    KnowledgeGraph graph;
    const std::string& manuscript_id = enriched.base.source_identifier;
    const Term ms = Term::iri(mint_manuscript_iri(manuscript_id));
    const Term rdf_type = Term::iri(rdf::kRdfType);

    // Provenance module: the manuscript and its descriptive literals.
    graph.insert({ms, rdf_type, ontology_term("Manuscript")});
    for (const std::string& title : enriched.base.titles)
        graph.insert({ms, dcterms_term("title"), Term::literal(title)});
    for (const std::string& creator : enriched.base.creators)
        graph.insert({ms, dcterms_term("creator"), Term::literal(creator)});
    for (const std::string& date : enriched.base.dates)
        graph.insert({ms, dcterms_term("date"), Term::literal(date)});
    for (const std::string& subject : enriched.base.subjects)
        graph.insert({ms, dcterms_term("subject"), Term::literal(subject)});

    // Physical module: counts and condition. stainCoverage is meaningful
    // only once at least one page was analyzed.
    graph.insert({ms, ontology_term("pageCount"), integer_literal(static_cast<long long>(enriched.pages_analyzed))});
    if (enriched.pages_analyzed > 0)
        graph.insert({ms, ontology_term("stainCoverage"), decimal_literal(enriched.stain_coverage)});
    for (const std::string& flag : enriched.condition_flags)
        graph.insert({ms, ontology_term("conditionFlag"), Term::literal(flag)});

    // Visual module: pages and their typed regions.
    for (const PageDetections& page : pages) {
        const Term page_term = Term::iri(mint_page_iri(manuscript_id, page.page_number));
        graph.insert({ms, ontology_term("hasPage"), page_term});
        graph.insert({page_term, rdf_type, ontology_term("Page")});
        graph.insert({page_term, ontology_term("pageNumber"), integer_literal(page.page_number)});
        graph.insert({page_term, ontology_term("widthPx"), integer_literal(page.width_px)});
        graph.insert({page_term, ontology_term("heightPx"), integer_literal(page.height_px)});
        for (const Region& region : page.regions) {
            const Term region_term = Term::iri(mint_region_iri(manuscript_id, page.page_number, region.id));
            graph.insert({page_term, ontology_term("hasRegion"), region_term});
            graph.insert(
                {region_term, rdf_type, Term::iri(mint_class_iri(annotations::capitalized_label(region.class_label)))});
            graph.insert({region_term, ontology_term("x"), decimal_literal(region.bbox.x)});
            graph.insert({region_term, ontology_term("y"), decimal_literal(region.bbox.y)});
            graph.insert({region_term, ontology_term("width"), decimal_literal(region.bbox.w)});
            graph.insert({region_term, ontology_term("height"), decimal_literal(region.bbox.h)});
            graph.insert({region_term, ontology_term("confidence"), decimal_literal(region.confidence)});
        }
    }

    for (const auto& [member, section] : enriched.section_assignments) {
        const auto [member_page, member_id] = split_scoped_id(member);
        const auto [section_page, section_id] = split_scoped_id(section);
        graph.insert({Term::iri(mint_region_iri(manuscript_id, member_page, member_id)),
                      ontology_term("belongsToSection"),
                      Term::iri(mint_region_iri(manuscript_id, section_page, section_id))});
    }
    return graph;
}

}  // namespace folio::kg
