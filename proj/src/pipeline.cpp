// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <utility>

#include <json.hpp>

#include "folio/annotations.hpp"
#include "folio/dc.hpp"
#include "folio/enrichment.hpp"
#include "folio/kg.hpp"
#include "folio/rdf.hpp"

namespace folio::pipeline {

namespace {

constexpr char kRecordStage[] = "record";

std::string record_relpath(const std::string& identifier) {
    return "records/" + store::sanitize_id(identifier) + ".json";
}

std::string detections_relpath(const std::string& manuscript_id) {
    return "detections/" + store::sanitize_id(manuscript_id) + ".json";
}

std::string tombstone_json(const std::string& identifier) {
    nlohmann::ordered_json doc;
    doc["source_identifier"] = identifier;
    doc["deleted"] = true;
    return doc.dump(2) + "\n";
}

bool is_tombstone(const std::string& bytes) {
    const auto doc = nlohmann::json::parse(bytes, nullptr, false);
    return doc.is_object() && doc.value("deleted", false);
}

std::vector<annotations::PageDetections> load_pages(const store::Store& store, const std::string& manuscript_id) {
    const std::string relpath = detections_relpath(manuscript_id);
    if (!store.has(relpath))
        return {};
    return annotations::parse_detections(store.read(relpath));
}

// Distinct labels in first-seen-then-sorted order so fixture runs are
// byte-reproducible no matter how records enumerate.
std::vector<std::string> sorted_unique(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    return labels;
}

}  // namespace

HarvestOutcome run_harvest(store::Store& store, http::Transport& transport, const HarvestParams& params) {
    HarvestOutcome outcome;

    oai::HarvestOptions options;
    options.metadata_prefix = params.metadata_prefix;
    if (!params.set.empty())
        options.set = params.set;
    if (!params.from.empty())
        options.from = params.from;
    if (!params.until.empty())
        options.until = params.until;
    if (params.sleeper)
        options.sleeper = params.sleeper;
    options.page_observer = [&](std::size_t page_number, const std::string& body) {
        char name[32];
        std::snprintf(name, sizeof(name), "raw/page-%04zu.xml", page_number);
        store.put(name, body, "raw", "harvest");
    };

    const oai::RecordSink sink = [&](const oai::Record& record) {
        if (record.deleted) {
            store.put(record_relpath(record.identifier), tombstone_json(record.identifier), kRecordStage, "harvest");
            ++outcome.tombstones_written;
            return;
        }
        const dc::DescriptiveRecord parsed = dc::parse_dc(record);
        store.put(record_relpath(record.identifier), dc::to_json(parsed), kRecordStage, "harvest");
        ++outcome.records_written;
    };

    outcome.summary = oai::harvest(params.endpoint, transport, options, sink);
    store.save_manifest();
    return outcome;
}

IngestOutcome run_ingest(store::Store& store, const std::string& detections_json, const config::Config& config) {
    std::vector<annotations::PageDetections> pages = annotations::parse_detections(detections_json);

    IngestOutcome outcome;
    if (pages.empty()) {
        // Validation guarantees the field exists even when no page does.
        outcome.manuscript_id = nlohmann::json::parse(detections_json).at("manuscript_id").get<std::string>();
    } else {
        outcome.manuscript_id = pages.front().manuscript_id;
    }
    outcome.pages = pages.size();

    for (annotations::PageDetections& page : pages) {
        outcome.regions_in += page.regions.size();
        page.regions = annotations::dedupe_regions(annotations::filter_regions(page.regions, config.min_confidence),
                                                   config.dedupe_iou);
        outcome.regions_kept += page.regions.size();
    }

    store.put(detections_relpath(outcome.manuscript_id), annotations::serialize_detections(outcome.manuscript_id, pages),
              "detections", "ingest-detections");
    store.save_manifest();
    return outcome;
}

EnrichOutcome run_enrich(store::Store& store, const config::Config& config) {
    if (store.stage_paths("detections").empty())
        throw MissingDetections();
    const std::vector<std::string> record_paths = store.stage_paths(kRecordStage);
    if (record_paths.empty())
        throw MissingRecords("enrich");

    const enrichment::Thresholds thresholds{config.stained, config.heavily_stained};

    EnrichOutcome outcome;
    std::set<std::string> matched_detections;
    for (const std::string& path : record_paths) {
        const std::string bytes = store.read(path);
        if (is_tombstone(bytes)) {
            ++outcome.tombstones_skipped;
            continue;
        }
        const dc::DescriptiveRecord base = dc::from_json(bytes);
        const auto pages = load_pages(store, base.source_identifier);
        if (!pages.empty() || store.has(detections_relpath(base.source_identifier))) {
            ++outcome.with_detections;
            matched_detections.insert(detections_relpath(base.source_identifier));
        }
        const enrichment::EnrichedRecord enriched = enrichment::enrich(base, pages, thresholds);
        store.put("enriched/" + store::sanitize_id(base.source_identifier) + ".json", enrichment::to_json(enriched),
                  "enriched", "enrich");
        ++outcome.records_enriched;
    }

    for (const std::string& path : store.stage_paths("detections"))
        if (!matched_detections.count(path))
            outcome.unmatched_detections.push_back(path);

    store.save_manifest();
    return outcome;
}

BuildOutcome run_build_kg(store::Store& store) {
    const std::vector<std::string> enriched_paths = store.stage_paths("enriched");
    if (enriched_paths.empty())
        throw MissingEnriched();

    BuildOutcome outcome;
    for (const std::string& path : enriched_paths) {
        const enrichment::EnrichedRecord enriched = enrichment::from_json(store.read(path));
        const auto pages = load_pages(store, enriched.base.source_identifier);
        const rdf::KnowledgeGraph graph = kg::build_graph(enriched, pages);

        const std::string basename = store::sanitize_id(enriched.base.source_identifier);
        store.put("graph/" + basename + ".nt", rdf::serialize_ntriples(graph), "graph", "build-kg");
        store.put("graph/" + basename + ".ttl", rdf::serialize_turtle(graph), "graph", "build-kg");
        ++outcome.graphs_written;
        outcome.triples_total += graph.size();
    }

    store.save_manifest();
    return outcome;
}

ReconcileOutcome run_reconcile(store::Store& store, recon::SearchClient& client, const config::Config& config) {
    const std::vector<std::string> record_paths = store.stage_paths(kRecordStage);
    if (record_paths.empty())
        throw MissingRecords("reconcile");

    struct ManuscriptLabels {
        std::string identifier;
        std::vector<std::string> creators;
        std::vector<std::string> subjects;
    };
    std::vector<ManuscriptLabels> manuscripts;
    std::vector<std::string> creator_labels;
    std::vector<std::string> subject_labels;
    for (const std::string& path : record_paths) {
        const std::string bytes = store.read(path);
        if (is_tombstone(bytes))
            continue;
        const dc::DescriptiveRecord base = dc::from_json(bytes);
        manuscripts.push_back({base.source_identifier, base.creators, base.subjects});
        creator_labels.insert(creator_labels.end(), base.creators.begin(), base.creators.end());
        subject_labels.insert(subject_labels.end(), base.subjects.begin(), base.subjects.end());
    }

    const recon::Thresholds thresholds{config.recon_link, config.recon_review};
    ReconcileOutcome outcome;
    outcome.creators = recon::reconcile(sorted_unique(std::move(creator_labels)), client, thresholds);
    outcome.subjects = recon::reconcile(sorted_unique(std::move(subject_labels)), client, thresholds);

    const auto linked = [](const recon::ReconcileResult& result, const std::string& label) -> const std::string* {
        for (const auto& [linked_label, iri] : result.links)
            if (linked_label == label)
                return &iri;
        return nullptr;
    };

    const rdf::Term same_as = rdf::Term::iri(rdf::kOwlSameAs);
    for (const ManuscriptLabels& manuscript : manuscripts) {
        rdf::KnowledgeGraph links;
        for (const std::string& label : manuscript.creators)
            if (const std::string* iri = linked(outcome.creators, label))
                links.insert({rdf::Term::iri(kg::mint_agent_iri(label)), same_as, rdf::Term::iri(*iri)});
        for (const std::string& label : manuscript.subjects)
            if (const std::string* iri = linked(outcome.subjects, label))
                links.insert({rdf::Term::iri(kg::mint_concept_iri(label)), same_as, rdf::Term::iri(*iri)});
        if (links.size() == 0)
            continue;
        store.put("links/" + store::sanitize_id(manuscript.identifier) + ".nt", rdf::serialize_ntriples(links), "links",
                  "reconcile");
        ++outcome.files_written;
    }

    store.save_manifest();
    return outcome;
}

query::BindingSet run_query(store::Store& store, const std::string& query_text) {
    const std::vector<std::string> graph_paths = store.stage_paths("graph");
    if (graph_paths.empty())
        throw MissingGraph();

    rdf::KnowledgeGraph merged;
    for (const std::string& path : graph_paths) {
        if (path.size() < 3 || path.compare(path.size() - 3, 3, ".nt") != 0)
            continue;
        merged.merge(rdf::parse_ntriples(store.read(path)));
    }
    return query::evaluate(query::parse_query(query_text), merged);
}

StatsReport run_stats(const store::Store& store) {
    StatsReport report;
    for (const auto& [path, entry] : store.manifest())
        ++report.stage_counts[entry.stage];
    report.verify = store::verify_store(store.root());
    return report;
}

}  // namespace folio::pipeline
