// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/annotations.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <json.hpp>

namespace folio::annotations {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

constexpr double kEdgeSlack = 1e-9;  // boxes may touch the page edge up to fp noise

struct ClassName {
    RegionClass cls;
    const char* label;
};

constexpr ClassName kClassNames[] = {
    {RegionClass::kParagraph, "paragraph"}, {RegionClass::kStain, "stain"},
    {RegionClass::kStamp, "stamp"},         {RegionClass::kDescription, "description"},
    {RegionClass::kSign, "sign"},           {RegionClass::kSignature, "signature"},
    {RegionClass::kImage, "image"},         {RegionClass::kOrnament, "ornament"},
    {RegionClass::kInitial, "initial"},     {RegionClass::kHeader, "header"},
};

std::string page_path(std::size_t i) {
    return "pages[" + std::to_string(i) + "]";
}

std::string region_path(std::size_t i, std::size_t j) {
    return page_path(i) + ".regions[" + std::to_string(j) + "]";
}

const json& require_key(const json& obj, const std::string& owner_path, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ValidationError(owner_path.empty() ? key : owner_path + "." + key, "missing");
    return *it;
}

std::string require_string(const json& obj, const std::string& owner_path, const char* key) {
    const json& value = require_key(obj, owner_path, key);
    if (!value.is_string())
        throw ValidationError(owner_path.empty() ? key : owner_path + "." + key, "expected a string");
    return value.get<std::string>();
}

int require_positive_int(const json& obj, const std::string& owner_path, const char* key) {
    const std::string path = owner_path.empty() ? key : owner_path + "." + key;
    const json& value = require_key(obj, owner_path, key);
    if (!value.is_number_integer())
        throw ValidationError(path, "expected an integer");
    const long long n = value.get<long long>();
    if (n < 1 || n > INT32_MAX)
        throw ValidationError(path, "must be a positive integer");
    return static_cast<int>(n);
}

Region parse_region(const json& node, const std::string& path) {
    if (!node.is_object())
        throw ValidationError(path, "expected an object");
    static const std::set<std::string> kRegionKeys = {"id", "class", "bbox", "confidence"};
    for (auto it = node.begin(); it != node.end(); ++it)
        if (!kRegionKeys.count(it.key()))
            throw ValidationError(path + "." + it.key(), "unknown key");

    Region region;
    region.id = require_string(node, path, "id");
    if (region.id.empty())
        throw ValidationError(path + ".id", "must be non-empty");

    const std::string label = require_string(node, path, "class");
    const std::optional<RegionClass> cls = parse_region_class(label);
    if (!cls)
        throw UnknownClassLabel(path + ".class", label);
    region.class_label = *cls;

    const json& bbox = require_key(node, path, "bbox");
    if (!bbox.is_array() || bbox.size() != 4)
        throw ValidationError(path + ".bbox", "expected [x, y, w, h]");
    double coords[4];
    for (std::size_t k = 0; k < 4; ++k) {
        if (!bbox[k].is_number())
            throw ValidationError(path + ".bbox[" + std::to_string(k) + "]", "expected a number");
        coords[k] = bbox[k].get<double>();
    }
    region.bbox = BBox{coords[0], coords[1], coords[2], coords[3]};
    if (region.bbox.x < 0 || region.bbox.y < 0)
        throw ValidationError(path + ".bbox", "x and y must be >= 0");
    if (region.bbox.w <= 0 || region.bbox.h <= 0)
        throw ValidationError(path + ".bbox", "w and h must be > 0");
    if (region.bbox.x2() > 1 + kEdgeSlack)
        throw ValidationError(path + ".bbox", "x+w exceeds the page");
    if (region.bbox.y2() > 1 + kEdgeSlack)
        throw ValidationError(path + ".bbox", "y+h exceeds the page");

    const json& confidence = require_key(node, path, "confidence");
    if (!confidence.is_number())
        throw ValidationError(path + ".confidence", "expected a number");
    region.confidence = confidence.get<double>();
    if (region.confidence < 0 || region.confidence > 1)
        throw ValidationError(path + ".confidence", "must be in [0,1]");
    return region;
}

}  // namespace

const std::array<RegionClass, kRegionClassCount>& all_region_classes() {
    static const std::array<RegionClass, kRegionClassCount> classes = {
        RegionClass::kParagraph, RegionClass::kStain,    RegionClass::kStamp,   RegionClass::kDescription,
        RegionClass::kSign,      RegionClass::kSignature, RegionClass::kImage,  RegionClass::kOrnament,
        RegionClass::kInitial,   RegionClass::kHeader,
    };
    return classes;
}

const char* to_string(RegionClass cls) {
    for (const ClassName& entry : kClassNames)
        if (entry.cls == cls)
            return entry.label;
    return "paragraph";
}

std::optional<RegionClass> parse_region_class(std::string_view label) {
    for (const ClassName& entry : kClassNames)
        if (label == entry.label)
            return entry.cls;
    return std::nullopt;
}

std::string capitalized_label(RegionClass cls) {
    std::string label = to_string(cls);
    label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    return label;
}

std::vector<PageDetections> parse_detections(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw ValidationError("$", std::string("not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ValidationError("$", "expected a JSON object");

    const std::string version = require_string(doc, "", "schema_version");
    if (version != "1.0")
        throw SchemaVersionUnsupported("schema_version '" + version + "' is not supported (expected \"1.0\")");

    const std::string manuscript_id = require_string(doc, "", "manuscript_id");
    if (manuscript_id.empty())
        throw ValidationError("manuscript_id", "must be non-empty");

    const json& pages = require_key(doc, "", "pages");
    if (!pages.is_array())
        throw ValidationError("pages", "expected an array");

    std::vector<PageDetections> out;
    std::set<int> seen_pages;
    for (std::size_t i = 0; i < pages.size(); ++i) {
        const std::string path = page_path(i);
        const json& node = pages[i];
        if (!node.is_object())
            throw ValidationError(path, "expected an object");

        PageDetections page;
        page.manuscript_id = manuscript_id;
        page.page_number = require_positive_int(node, path, "page_number");
        if (!seen_pages.insert(page.page_number).second)
            throw ValidationError(path + ".page_number", "duplicate page number");
        page.image_uri = require_string(node, path, "image_uri");
        page.width_px = require_positive_int(node, path, "width_px");
        page.height_px = require_positive_int(node, path, "height_px");

        const json& regions = require_key(node, path, "regions");
        if (!regions.is_array())
            throw ValidationError(path + ".regions", "expected an array");
        std::set<std::string> seen_ids;
        for (std::size_t j = 0; j < regions.size(); ++j) {
            Region region = parse_region(regions[j], region_path(i, j));
            if (!seen_ids.insert(region.id).second)
                throw ValidationError(region_path(i, j) + ".id", "duplicate region id");
            page.regions.push_back(std::move(region));
        }
        out.push_back(std::move(page));
    }
    return out;
}

std::string serialize_detections(const std::string& manuscript_id, const std::vector<PageDetections>& pages) {
    ordered_json doc;
    doc["schema_version"] = "1.0";
    doc["manuscript_id"] = manuscript_id;
    doc["pages"] = ordered_json::array();
    for (const PageDetections& page : pages) {
        ordered_json node;
        node["page_number"] = page.page_number;
        node["image_uri"] = page.image_uri;
        node["width_px"] = page.width_px;
        node["height_px"] = page.height_px;
        node["regions"] = ordered_json::array();
        for (const Region& region : page.regions) {
            ordered_json r;
            r["id"] = region.id;
            r["class"] = to_string(region.class_label);
            r["bbox"] = {region.bbox.x, region.bbox.y, region.bbox.w, region.bbox.h};
            r["confidence"] = region.confidence;
            node["regions"].push_back(std::move(r));
        }
        doc["pages"].push_back(std::move(node));
    }
    return doc.dump(2) + "\n";
}

double overlap_area(const BBox& a, const BBox& b) {
    const double w = std::min(a.x2(), b.x2()) - std::max(a.x, b.x);
    const double h = std::min(a.y2(), b.y2()) - std::max(a.y, b.y);
    if (w <= 0 || h <= 0)
        return 0;
    return w * h;
}

double iou(const BBox& a, const BBox& b) {
    const double inter = overlap_area(a, b);
    const double uni = a.area() + b.area() - inter;
    return uni > 0 ? inter / uni : 0;
}

std::vector<Region> filter_regions(const std::vector<Region>& regions, double min_confidence) {
    std::vector<Region> out;
    for (const Region& region : regions)
        if (region.confidence >= min_confidence)
            out.push_back(region);
    return out;
}

std::vector<Region> dedupe_regions(const std::vector<Region>& regions, double iou_threshold) {
    std::vector<Region> sorted = regions;
    std::sort(sorted.begin(), sorted.end(), [](const Region& a, const Region& b) {
        if (a.confidence != b.confidence)
            return a.confidence > b.confidence;
        return a.id < b.id;
    });
    std::vector<Region> accepted;
    for (const Region& candidate : sorted) {
        bool suppressed = false;
        for (const Region& keeper : accepted) {
            if (keeper.class_label != candidate.class_label)
                continue;
            if (iou(keeper.bbox, candidate.bbox) >= iou_threshold) {
                suppressed = true;
                break;
            }
        }
        if (!suppressed)
            accepted.push_back(candidate);
    }
    return accepted;
}

std::vector<std::pair<std::string, std::string>> assign_sections(const std::vector<Region>& regions) {
    std::vector<const Region*> sections;
    for (const Region& region : regions)
        if (region.class_label == RegionClass::kParagraph || region.class_label == RegionClass::kHeader)
            sections.push_back(&region);

    std::vector<std::pair<std::string, std::string>> pairs;
    for (const Region& member : regions) {
        if (member.class_label == RegionClass::kParagraph || member.class_label == RegionClass::kHeader)
            continue;
        const Region* best = nullptr;
        double best_fraction = 0;
        for (const Region* section : sections) {
            const double fraction = overlap_area(member.bbox, section->bbox) / member.bbox.area();
            if (fraction < 0.5)
                continue;
            if (best == nullptr || fraction > best_fraction ||
                (fraction == best_fraction && (section->bbox.area() < best->bbox.area() ||
                                               (section->bbox.area() == best->bbox.area() && section->id < best->id)))) {
                best = section;
                best_fraction = fraction;
            }
        }
        if (best != nullptr)
            pairs.emplace_back(member.id, best->id);
    }
    return pairs;
}

}  // namespace folio::annotations
