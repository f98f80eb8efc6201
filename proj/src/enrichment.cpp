// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/enrichment.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace folio::enrichment {

namespace {

using json = nlohmann::json;
using annotations::BBox;
using annotations::PageDetections;
using annotations::Region;
using annotations::RegionClass;

const std::set<RegionClass>& text_classes() {
    static const std::set<RegionClass> classes = {RegionClass::kParagraph, RegionClass::kHeader,
                                                  RegionClass::kDescription};
    return classes;
}

const std::set<RegionClass>& stain_classes() {
    static const std::set<RegionClass> classes = {RegionClass::kStain};
    return classes;
}

// Fields whose provenance is "enriched" once enrich has run.
constexpr const char* kDerivedFields[] = {
    "class_counts", "text_coverage",       "stain_coverage", "condition_flags",
    "has_stamp",    "section_assignments", "pages_analyzed",
};

std::vector<const PageDetections*> pages_by_number(const std::vector<PageDetections>& pages) {
    std::vector<const PageDetections*> sorted;
    sorted.reserve(pages.size());
    for (const PageDetections& page : pages)
        sorted.push_back(&page);
    std::sort(sorted.begin(), sorted.end(),
              [](const PageDetections* a, const PageDetections* b) { return a->page_number < b->page_number; });
    return sorted;
}

}  // namespace

std::map<RegionClass, std::size_t> class_counts(const std::vector<PageDetections>& pages) {
    std::map<RegionClass, std::size_t> counts;
    for (RegionClass cls : annotations::all_region_classes())
        counts[cls] = 0;
    for (const PageDetections& page : pages)
        for (const Region& region : page.regions)
            ++counts[region.class_label];
    return counts;
}

double union_area(const std::vector<BBox>& boxes) {
    if (boxes.empty())
        return 0;
    std::vector<double> xs;
    xs.reserve(boxes.size() * 2);
    for (const BBox& box : boxes) {
        xs.push_back(box.x);
        xs.push_back(box.x2());
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    double area = 0;
    std::vector<std::pair<double, double>> intervals;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double lo = xs[k];
        const double hi = xs[k + 1];
        const double width = hi - lo;
        if (width <= 0)
            continue;
        // Slab edges are box edges, so coverage tests are exact.
        intervals.clear();
        for (const BBox& box : boxes)
            if (box.x <= lo && hi <= box.x2())
                intervals.emplace_back(box.y, box.y2());
        if (intervals.empty())
            continue;
        std::sort(intervals.begin(), intervals.end());
        double covered = 0;
        double cur_lo = intervals[0].first;
        double cur_hi = intervals[0].second;
        for (std::size_t i = 1; i < intervals.size(); ++i) {
            if (intervals[i].first > cur_hi) {
                covered += cur_hi - cur_lo;
                cur_lo = intervals[i].first;
                cur_hi = intervals[i].second;
            } else {
                cur_hi = std::max(cur_hi, intervals[i].second);
            }
        }
        covered += cur_hi - cur_lo;
        area += width * covered;
    }
    return area;
}

double page_coverage(const PageDetections& page, const std::set<RegionClass>& classes) {
    std::vector<BBox> boxes;
    for (const Region& region : page.regions)
        if (classes.count(region.class_label))
            boxes.push_back(region.bbox);
    return union_area(boxes);
}

double round6(double value) {
    return std::nearbyint(value * 1e6) / 1e6;
}

EnrichedRecord enrich(const dc::DescriptiveRecord& record, const std::vector<PageDetections>& pages,
                      const Thresholds& thresholds) {
    for (const PageDetections& page : pages)
        if (page.manuscript_id != record.source_identifier)
            throw ManuscriptMismatch("page " + std::to_string(page.page_number) + " belongs to '" +
                                     page.manuscript_id + "', not '" + record.source_identifier + "'");

    EnrichedRecord out;
    out.base = record;
    out.class_counts = class_counts(pages);
    out.pages_analyzed = pages.size();
    out.has_stamp = out.class_counts[RegionClass::kStamp] > 0;

    // Summation follows page numbers, not list positions, so the mean is
    // identical under any permutation of the input.
    const std::vector<const PageDetections*> sorted = pages_by_number(pages);
    if (!sorted.empty()) {
        double text_sum = 0;
        double stain_sum = 0;
        for (const PageDetections* page : sorted) {
            text_sum += page_coverage(*page, text_classes());
            stain_sum += page_coverage(*page, stain_classes());
        }
        out.text_coverage = round6(text_sum / static_cast<double>(sorted.size()));
        out.stain_coverage = round6(stain_sum / static_cast<double>(sorted.size()));
    }
    if (out.stain_coverage > thresholds.stained)
        out.condition_flags.insert("stained");
    if (out.stain_coverage > thresholds.heavily_stained)
        out.condition_flags.insert("heavily_stained");

    for (const PageDetections* page : sorted) {
        const std::string prefix = "p" + std::to_string(page->page_number) + "/";
        for (const auto& [member, section] : annotations::assign_sections(page->regions))
            out.section_assignments.emplace_back(prefix + member, prefix + section);
    }

    for (const char* field : kDerivedFields)
        out.base.field_provenance[field] = "enriched";
    return out;
}

std::string to_json(const EnrichedRecord& record) {
    json doc;
    doc["base"] = json::parse(dc::to_json(record.base));
    json counts = json::object();
    for (const auto& [cls, count] : record.class_counts)
        counts[annotations::to_string(cls)] = count;
    doc["class_counts"] = std::move(counts);
    doc["text_coverage"] = round6(record.text_coverage);
    doc["stain_coverage"] = round6(record.stain_coverage);
    doc["condition_flags"] = record.condition_flags;
    doc["has_stamp"] = record.has_stamp;
    json assignments = json::array();
    for (const auto& [member, section] : record.section_assignments)
        assignments.push_back(json::array({member, section}));
    doc["section_assignments"] = std::move(assignments);
    doc["pages_analyzed"] = record.pages_analyzed;
    return doc.dump(2) + "\n";
}

EnrichedRecord from_json(const std::string& bytes) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw Error("E_ENRICH_JSON", std::string("not valid JSON: ") + e.what());
    }
    EnrichedRecord out;
    out.base = dc::from_json(doc.at("base").dump());
    for (const auto& [label, count] : doc.at("class_counts").items()) {
        const std::optional<RegionClass> cls = annotations::parse_region_class(label);
        if (!cls)
            throw Error("E_ENRICH_JSON", "unknown class label '" + label + "'");
        out.class_counts[*cls] = count.get<std::size_t>();
    }
    for (RegionClass cls : annotations::all_region_classes())
        out.class_counts.emplace(cls, 0);
    doc.at("text_coverage").get_to(out.text_coverage);
    doc.at("stain_coverage").get_to(out.stain_coverage);
    doc.at("condition_flags").get_to(out.condition_flags);
    doc.at("has_stamp").get_to(out.has_stamp);
    for (const json& pair : doc.at("section_assignments"))
        out.section_assignments.emplace_back(pair.at(0).get<std::string>(), pair.at(1).get<std::string>());
    doc.at("pages_analyzed").get_to(out.pages_analyzed);
    return out;
}

}  // namespace folio::enrichment
