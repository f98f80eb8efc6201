// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/dc.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "folio/unicode.hpp"
#include "folio/xml.hpp"

namespace folio::dc {

namespace {

using json = nlohmann::json;

// Mapped DC element local names in the order of the struct fields.
struct FieldSlot {
    const char* element;
    std::vector<std::string> DescriptiveRecord::* member;
};

constexpr const char* kUnmappedElements[] = {
    "contributor", "publisher", "format", "relation", "coverage", "description", "source",
};

const std::vector<FieldSlot>& mapped_slots() {
    static const std::vector<FieldSlot> slots = {
        {"title", &DescriptiveRecord::titles},       {"creator", &DescriptiveRecord::creators},
        {"date", &DescriptiveRecord::dates},         {"subject", &DescriptiveRecord::subjects},
        {"type", &DescriptiveRecord::types},         {"language", &DescriptiveRecord::languages},
        {"rights", &DescriptiveRecord::rights},      {"identifier", &DescriptiveRecord::identifiers},
    };
    return slots;
}

// Field names carrying list provenance, keyed as in field_provenance.
const std::map<std::string, std::vector<std::string> DescriptiveRecord::*>& provenance_slots() {
    static const std::map<std::string, std::vector<std::string> DescriptiveRecord::*> slots = {
        {"titles", &DescriptiveRecord::titles},       {"creators", &DescriptiveRecord::creators},
        {"dates", &DescriptiveRecord::dates},         {"subjects", &DescriptiveRecord::subjects},
        {"types", &DescriptiveRecord::types},         {"languages", &DescriptiveRecord::languages},
        {"rights", &DescriptiveRecord::rights},       {"identifiers", &DescriptiveRecord::identifiers},
    };
    return slots;
}

// Locates the first oai_dc:dc element in the payload tree.
const xml::Element* find_dc_root(const xml::Element& el) {
    if (el.ns_uri == kOaiDcNamespace && el.local == "dc")
        return &el;
    for (const xml::Element* child : el.child_elements())
        if (const xml::Element* found = find_dc_root(*child))
            return found;
    return nullptr;
}

// A child counts as a DC element when bound to the DC namespace, or when it
// carries no namespace at all (lenient on feeds with missing declarations).
bool is_dc_element(const xml::Element& el) {
    return el.ns_uri == kDcElementsNamespace || el.ns_uri.empty();
}

std::vector<std::string> normalize_list(const std::vector<std::string>& in) {
    std::vector<std::string> out;
    std::set<std::string> seen;
    for (const std::string& value : in) {
        std::string cleaned = unicode::clean_text(value);
        if (cleaned.empty())
            continue;
        if (seen.insert(cleaned).second)
            out.push_back(std::move(cleaned));
    }
    return out;
}

}  // namespace

DescriptiveRecord parse_dc(const oai::Record& record) {
    if (record.deleted)
        throw NoDcPayload("record '" + record.identifier + "' is deleted");
    if (record.metadata_xml.empty())
        throw NoDcPayload("record '" + record.identifier + "' carries no metadata");

    const xml::Document doc = xml::parse(record.metadata_xml);
    const xml::Element* dc_root = find_dc_root(*doc.root);
    if (dc_root == nullptr)
        throw NoDcPayload("record '" + record.identifier + "' carries no oai_dc:dc element");

    DescriptiveRecord out;
    out.source_identifier = record.identifier;
    for (const xml::Element* child : dc_root->child_elements()) {
        if (!is_dc_element(*child))
            continue;
        bool mapped = false;
        for (const FieldSlot& slot : mapped_slots()) {
            if (child->local == slot.element) {
                (out.*slot.member).push_back(child->text());
                mapped = true;
                break;
            }
        }
        if (mapped)
            continue;
        for (const char* name : kUnmappedElements) {
            if (child->local == name) {
                out.extras[name].push_back(child->text());
                break;
            }
        }
    }
    return normalize(out);
}

DescriptiveRecord normalize(const DescriptiveRecord& record) {
    DescriptiveRecord out;
    out.source_identifier = unicode::clean_text(record.source_identifier);
    for (const auto& [name, member] : provenance_slots())
        out.*member = normalize_list(record.*member);
    for (const auto& [key, values] : record.extras) {
        std::vector<std::string> cleaned = normalize_list(values);
        if (!cleaned.empty())
            out.extras[key] = std::move(cleaned);
    }
    for (const auto& [name, member] : provenance_slots())
        if (!(out.*member).empty())
            out.field_provenance[name] = "harvested";
    if (!out.extras.empty())
        out.field_provenance["extras"] = "harvested";
    // Derived-field provenance set by enrichment survives re-normalization.
    for (const auto& [field, origin] : record.field_provenance)
        if (origin == "enriched")
            out.field_provenance[field] = origin;
    return out;
}

std::string to_json(const DescriptiveRecord& record) {
    json doc;
    doc["source_identifier"] = record.source_identifier;
    doc["titles"] = record.titles;
    doc["creators"] = record.creators;
    doc["dates"] = record.dates;
    doc["subjects"] = record.subjects;
    doc["types"] = record.types;
    doc["languages"] = record.languages;
    doc["rights"] = record.rights;
    doc["identifiers"] = record.identifiers;
    doc["extras"] = record.extras;
    doc["field_provenance"] = record.field_provenance;
    return doc.dump(2) + "\n";
}

DescriptiveRecord from_json(const std::string& bytes) {
    const json doc = json::parse(bytes);
    DescriptiveRecord out;
    doc.at("source_identifier").get_to(out.source_identifier);
    doc.at("titles").get_to(out.titles);
    doc.at("creators").get_to(out.creators);
    doc.at("dates").get_to(out.dates);
    doc.at("subjects").get_to(out.subjects);
    doc.at("types").get_to(out.types);
    doc.at("languages").get_to(out.languages);
    doc.at("rights").get_to(out.rights);
    doc.at("identifiers").get_to(out.identifiers);
    if (doc.contains("extras"))
        doc.at("extras").get_to(out.extras);
    if (doc.contains("field_provenance"))
        doc.at("field_provenance").get_to(out.field_provenance);
    return out;
}

}  // namespace folio::dc
