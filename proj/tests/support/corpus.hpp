// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// Synthetic 150-manuscript repository used across the test suites: OAI-PMH
// fixture pages (one deleted record, a 503 injection, a token-expiry
// variant), page-detection documents, and a registry fixture for
// reconciliation. Everything is a pure function of the manuscript number,
// so tests can state expected values independently.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "folio/annotations.hpp"
#include "folio/dc.hpp"

namespace corpus {

inline constexpr int kRecordCount = 150;
inline constexpr int kDeletedNumber = 42;
inline constexpr char kEndpoint[] = "http://fixture.example/oai";

// "oai:jbc:00007"
std::string record_identifier(int n);

// Raw Dublin Core strings as they appear in the fixture XML (before any
// normalization). Deleted manuscripts have no descriptive content.
struct RawRecord {
    std::vector<std::string> titles;
    std::vector<std::string> creators;
    std::vector<std::string> dates;
    std::vector<std::string> subjects;
    std::vector<std::string> types;
    std::vector<std::string> languages;
    std::vector<std::string> rights;
    std::vector<std::string> identifiers;
    std::vector<std::pair<std::string, std::string>> extras;  // (element local name, value)
    std::string datestamp;
    std::vector<std::string> set_specs;
};

RawRecord raw_record(int n);

// The record as the pipeline should store it after parsing and cleanup.
folio::dc::DescriptiveRecord expected_record(int n);

// One full ListRecords envelope; page is 1-based, pages hold 50 records.
std::string list_records_page(int page);

// OAI-PMH error envelope for the given request attributes.
std::string error_envelope(const std::string& verb, const std::string& code, const std::string& message);

// Fixture repository with the 503-with-Retry-After injection on page 2 and
// a noRecordsMatch mapping for set=empty.
void write_happy_fixture(const std::filesystem::path& dir);

// Same page 1, but the page-2 token answers badResumptionToken.
void write_expiry_fixture(const std::filesystem::path& dir);

// Manuscript numbers with at least one stamp region: the known answer set.
const std::vector<int>& stamp_manuscripts();

// Manuscript numbers that have a detections document.
const std::vector<int>& detections_manuscripts();

// Detection pages for one manuscript (empty when it has none).
std::vector<folio::annotations::PageDetections> detections_pages(int n);

// Interchange JSON for one manuscript's detections.
std::string detections_json(int n);

// The 30-label reconciliation fixture.
const std::vector<std::string>& recon_labels();

// Registry fixture JSON: covers the 30 labels (with two null entries that
// simulate outages) plus entries for corpus creator and subject labels.
std::string recon_registry_json();

}  // namespace corpus
