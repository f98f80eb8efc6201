// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// Detection interchange: page regions produced by layout detectors,
// geometric utilities, and section assignment.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folio/error.hpp"

namespace folio::annotations {

// The ten layout classes, closed set, serialized lowercase.
enum class RegionClass {
    kParagraph,
    kStain,
    kStamp,
    kDescription,
    kSign,
    kSignature,
    kImage,
    kOrnament,
    kInitial,
    kHeader,
};

inline constexpr std::size_t kRegionClassCount = 10;

const std::array<RegionClass, kRegionClassCount>& all_region_classes();
const char* to_string(RegionClass cls);
std::optional<RegionClass> parse_region_class(std::string_view label);
// "stamp" -> "Stamp"; used for ontology class IRIs.
std::string capitalized_label(RegionClass cls);

class SchemaVersionUnsupported : public Error {
public:
    explicit SchemaVersionUnsupported(const std::string& message) : Error("E_SCHEMA_VERSION", message) {}
};

// Carries the JSON path of the first offending field, e.g. "pages[0].regions[2].bbox".
class ValidationError : public Error {
public:
    ValidationError(const std::string& path, const std::string& message)
        : Error("E_SCHEMA_VALIDATION", path + ": " + message), path_(path) {}

    const std::string& path() const noexcept { return path_; }

protected:
    ValidationError(std::string code, const std::string& path, const std::string& message)
        : Error(std::move(code), path + ": " + message), path_(path) {}

private:
    std::string path_;
};

class UnknownClassLabel : public ValidationError {
public:
    UnknownClassLabel(const std::string& path, const std::string& label)
        : ValidationError("E_SCHEMA_UNKNOWN_CLASS", path, "unknown class label '" + label + "'") {}
};

// Axis-aligned box in page fractions, origin top-left, y growing downward.
struct BBox {
    double x = 0;
    double y = 0;
    double w = 0;
    double h = 0;

    double x2() const { return x + w; }
    double y2() const { return y + h; }
    double area() const { return w * h; }

    bool operator==(const BBox&) const = default;
};

struct Region {
    std::string id;  // unique within its page
    RegionClass class_label = RegionClass::kParagraph;
    BBox bbox;
    double confidence = 0;

    bool operator==(const Region&) const = default;
};

struct PageDetections {
    std::string manuscript_id;
    int page_number = 1;
    std::string image_uri;
    int width_px = 1;
    int height_px = 1;
    std::vector<Region> regions;

    bool operator==(const PageDetections&) const = default;
};

// Parses one interchange document (schema_version "1.0"). All invariants
// are enforced; page numbers must be unique within the document so pages
// address regions unambiguously. Unknown top-level and page keys are
// ignored, unknown region keys rejected.
std::vector<PageDetections> parse_detections(const std::string& bytes);

// Inverse of parse_detections; emits the interchange schema with keys in
// declaration order. parse(serialize(pages)) == pages.
std::string serialize_detections(const std::string& manuscript_id, const std::vector<PageDetections>& pages);

// Intersection area of two boxes (0 when disjoint).
double overlap_area(const BBox& a, const BBox& b);

// Intersection over union, in [0,1].
double iou(const BBox& a, const BBox& b);

// Keeps regions with confidence >= min_confidence, order preserved.
std::vector<Region> filter_regions(const std::vector<Region>& regions, double min_confidence);

// Greedy per-class suppression: regions sorted by (confidence desc, id asc);
// a region survives iff its IoU with every previously accepted region of the
// same class is < iou_threshold. Output keeps the sorted order.
std::vector<Region> dedupe_regions(const std::vector<Region>& regions, double iou_threshold);

// Pairs every non-text region with the paragraph or header covering at
// least half of it. Candidates ranked by overlap fraction, ties broken by
// smaller section area, then smaller section id. Pairs are emitted in the
// input order of the member regions.
std::vector<std::pair<std::string, std::string>> assign_sections(const std::vector<Region>& regions);

}  // namespace folio::annotations
