// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// IRI minting and knowledge-graph construction from enriched records,
// per the three ontology modules: provenance (descriptive fields),
// physical (counts, condition), visual (pages and regions).
#pragma once

#include <string>
#include <vector>

#include "folio/annotations.hpp"
#include "folio/enrichment.hpp"
#include "folio/error.hpp"
#include "folio/rdf.hpp"

namespace folio::kg {

inline constexpr char kResourceBase[] = "https://example.org/jdl/resource/";
inline constexpr char kOntologyBase[] = "https://example.org/jdl/ontology#";
inline constexpr char kDcTermsBase[] = "http://purl.org/dc/terms/";

class EmptyPart : public Error {
public:
    explicit EmptyPart(const std::string& message) : Error("E_KG_EMPTY_PART", message) {}
};

// Entity IRIs live under the resource base, vocabulary under the ontology
// base. Every caller-supplied part is percent-encoded (unreserved bytes
// kept); empty parts are rejected.
std::string mint_manuscript_iri(const std::string& manuscript_id);
std::string mint_page_iri(const std::string& manuscript_id, int page_number);
std::string mint_region_iri(const std::string& manuscript_id, int page_number, const std::string& region_id);
std::string mint_class_iri(const std::string& name);
std::string mint_property_iri(const std::string& name);
// Reconciliation subjects: creators as agents, subject keywords as concepts.
std::string mint_agent_iri(const std::string& label);
std::string mint_concept_iri(const std::string& label);

// Emits the manuscript node with its descriptive literals and derived
// indicators, one node per page, one node per region typed by its class,
// and a belongsToSection triple per section assignment.
rdf::KnowledgeGraph build_graph(const enrichment::EnrichedRecord& enriched,
                                const std::vector<annotations::PageDetections>& pages);

// Fixed 6-decimal lexical form for xsd:decimal coordinate literals.
std::string decimal6(double value);

}  // namespace folio::kg
