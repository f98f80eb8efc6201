// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// Dublin Core (oai_dc) descriptive metadata model.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "folio/error.hpp"
#include "folio/oai.hpp"

namespace folio::dc {

inline constexpr char kOaiDcNamespace[] = "http://www.openarchives.org/OAI/2.0/oai_dc/";
inline constexpr char kDcElementsNamespace[] = "http://purl.org/dc/elements/1.1/";

// Raised when a record carries no oai_dc:dc payload (deleted records included).
class NoDcPayload : public Error {
public:
    explicit NoDcPayload(const std::string& message) : Error("E_DC_NO_PAYLOAD", message) {}
};

// Normalized descriptive metadata for one manuscript. All stored strings are
// NFC, trimmed, with internal whitespace collapsed; lists are duplicate-free
// preserving first occurrence.
struct DescriptiveRecord {
    std::string source_identifier;
    std::vector<std::string> titles;
    std::vector<std::string> creators;
    std::vector<std::string> dates;  // verbatim: "ca. 1480" and friends resist ISO coercion
    std::vector<std::string> subjects;
    std::vector<std::string> types;
    std::vector<std::string> languages;
    std::vector<std::string> rights;
    std::vector<std::string> identifiers;
    // Unmapped DC elements (contributor, publisher, format, relation,
    // coverage, description, source), keyed by element local name.
    std::map<std::string, std::vector<std::string>> extras;
    // field name -> "harvested" | "enriched"
    std::map<std::string, std::string> field_provenance;

    bool operator==(const DescriptiveRecord&) const = default;
};

// Parses the oai_dc payload of a harvested record. The result is already
// normalized (see normalize below) and provenance is "harvested" for every
// populated field.
DescriptiveRecord parse_dc(const oai::Record& record);

// NFC + trim + collapse internal whitespace on every string; empty strings
// dropped; duplicates removed keeping first occurrence. Idempotent.
DescriptiveRecord normalize(const DescriptiveRecord& record);

// JSON round-trip; field names match the struct member names exactly.
std::string to_json(const DescriptiveRecord& record);
DescriptiveRecord from_json(const std::string& bytes);

}  // namespace folio::dc
