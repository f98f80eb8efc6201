// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// Pipeline stages over a store: each stage reads the previous stage's
// manifest entries, writes its own, and refuses to run out of order.
#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "folio/config.hpp"
#include "folio/error.hpp"
#include "folio/http.hpp"
#include "folio/oai.hpp"
#include "folio/query.hpp"
#include "folio/recon.hpp"
#include "folio/store.hpp"

namespace folio::pipeline {

// Stage-ordering violations. `enrich` before any ingested detections is
// reported under the schema prefix since the missing input is the
// detections interchange itself.
class MissingDetections : public Error {
public:
    MissingDetections() : Error("E_SCHEMA_MISSING_DETECTIONS", "no detections ingested; run ingest-detections first") {}
};

class MissingRecords : public Error {
public:
    explicit MissingRecords(const std::string& needed_by)
        : Error("E_STORE_MISSING_RECORDS", "no harvested records; run harvest before " + needed_by) {}
};

class MissingEnriched : public Error {
public:
    MissingEnriched() : Error("E_STORE_MISSING_ENRICHED", "no enriched records; run enrich before build-kg") {}
};

class MissingGraph : public Error {
public:
    MissingGraph() : Error("E_STORE_MISSING_GRAPH", "no graphs built; run build-kg before query") {}
};

struct HarvestParams {
    std::string endpoint;
    std::string metadata_prefix = "oai_dc";
    std::string set;    // empty: not sent
    std::string from;   // empty: not sent
    std::string until;  // empty: not sent
    oai::Sleeper sleeper;
};

struct HarvestOutcome {
    oai::HarvestSummary summary;
    std::size_t records_written = 0;    // descriptive record files
    std::size_t tombstones_written = 0;  // deleted-record markers
};

// Harvests ListRecords pages into raw/, parses each record's Dublin Core
// payload into records/. Deleted records leave a tombstone file so the
// deletion is visible downstream.
HarvestOutcome run_harvest(store::Store& store, http::Transport& transport, const HarvestParams& params);

struct IngestOutcome {
    std::string manuscript_id;
    std::size_t pages = 0;
    std::size_t regions_in = 0;
    std::size_t regions_kept = 0;
};

// Validates one detections interchange document, drops regions below the
// configured confidence, suppresses near-duplicates per class, and stores
// the canonicalized document under detections/.
IngestOutcome run_ingest(store::Store& store, const std::string& detections_json, const config::Config& config);

struct EnrichOutcome {
    std::size_t records_enriched = 0;
    std::size_t tombstones_skipped = 0;
    std::size_t with_detections = 0;
    // Detections documents whose manuscript id matches no harvested record.
    std::vector<std::string> unmatched_detections;
};

// Joins records/ with detections/ by manuscript id and writes the derived
// indicators to enriched/. Records without detections enrich to zero pages.
EnrichOutcome run_enrich(store::Store& store, const config::Config& config);

struct BuildOutcome {
    std::size_t graphs_written = 0;
    std::size_t triples_total = 0;
};

// Builds one knowledge graph per enriched record and stores both the
// canonical N-Triples and the Turtle rendering under graph/.
BuildOutcome run_build_kg(store::Store& store);

struct ReconcileOutcome {
    recon::ReconcileResult creators;  // labels are unique and sorted
    recon::ReconcileResult subjects;
    std::size_t files_written = 0;
};

// Reconciles the distinct creator and subject labels of all records and
// writes per-manuscript owl:sameAs link graphs under links/. Review-queue
// candidates are returned, not persisted.
ReconcileOutcome run_reconcile(store::Store& store, recon::SearchClient& client, const config::Config& config);

// Evaluates one BGP query over the union of every stored N-Triples graph.
query::BindingSet run_query(store::Store& store, const std::string& query_text);

struct StatsReport {
    std::map<std::string, std::size_t> stage_counts;
    store::VerifyReport verify;
};

StatsReport run_stats(const store::Store& store);

}  // namespace folio::pipeline
