// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// Derived layout, condition, and provenance indicators for one manuscript.
#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "folio/annotations.hpp"
#include "folio/dc.hpp"
#include "folio/error.hpp"

namespace folio::enrichment {

class ManuscriptMismatch : public Error {
public:
    explicit ManuscriptMismatch(const std::string& message) : Error("E_ENRICH_MISMATCH", message) {}
};

// Condition flag thresholds are configuration defaults; the source material
// gives no quantitative criterion, so the cutoffs are deliberate inventions.
struct Thresholds {
    double stained = 0.02;          // stain_coverage above this flags "stained"
    double heavily_stained = 0.10;  // and above this additionally "heavily_stained"
};

struct EnrichedRecord {
    dc::DescriptiveRecord base;
    std::map<annotations::RegionClass, std::size_t> class_counts;  // all ten keys present
    double text_coverage = 0;   // mean over pages of {paragraph, header, description} union
    double stain_coverage = 0;  // mean over pages of {stain} union
    std::set<std::string> condition_flags;  // subset of {stained, heavily_stained}
    bool has_stamp = false;
    // (manuscript-scoped member id, section id), ids prefixed "p<page_number>/"
    std::vector<std::pair<std::string, std::string>> section_assignments;
    std::size_t pages_analyzed = 0;

    bool operator==(const EnrichedRecord&) const = default;
};

// Total region count per class over all pages, zero-filled for absent classes.
std::map<annotations::RegionClass, std::size_t> class_counts(const std::vector<annotations::PageDetections>& pages);

// Exact area of the geometric union, by coordinate compression over the
// distinct x-edges, summing the covered y-extent per vertical slab.
double union_area(const std::vector<annotations::BBox>& boxes);

// union_area of the boxes of regions whose class is in `classes`.
double page_coverage(const annotations::PageDetections& page, const std::set<annotations::RegionClass>& classes);

// Populates every derived field from the detections. Pages must carry the
// record's manuscript id. Per-page coverages are averaged arithmetically;
// page order does not affect any output field.
EnrichedRecord enrich(const dc::DescriptiveRecord& record, const std::vector<annotations::PageDetections>& pages,
                      const Thresholds& thresholds = {});

// Rounds to at most 6 decimal digits, ties to even.
double round6(double value);

// JSON round-trip; coverages carry at most 6 decimal digits.
std::string to_json(const EnrichedRecord& record);
EnrichedRecord from_json(const std::string& bytes);

}  // namespace folio::enrichment
