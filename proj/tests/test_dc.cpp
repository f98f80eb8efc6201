// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "folio/dc.hpp"
#include "folio/oai.hpp"
#include "support/corpus.hpp"

using namespace folio;
using namespace folio::dc;

namespace {

oai::Record harvested(int n) {
    const oai::Response response =
        parse_response(corpus::list_records_page((n - 1) / 50 + 1), oai::Verb::kListRecords);
    return response.records[static_cast<std::size_t>((n - 1) % 50)];
}

}  // namespace

TEST_CASE("every corpus record parses to its expected normal form") {
    for (int n = 1; n <= corpus::kRecordCount; ++n) {
        if (n == corpus::kDeletedNumber)
            continue;
        CAPTURE(n);
        const DescriptiveRecord parsed = parse_dc(harvested(n));
        const DescriptiveRecord expected = corpus::expected_record(n);
        REQUIRE(parsed == expected);
    }
}

TEST_CASE("deleted records carry no payload") {
    const oai::Record record = harvested(corpus::kDeletedNumber);
    REQUIRE(record.deleted);
    CHECK_THROWS_AS(parse_dc(record), NoDcPayload);
    try {
        parse_dc(record);
        FAIL("expected throw");
    } catch (const NoDcPayload& e) {
        CHECK(e.code() == "E_DC_NO_PAYLOAD");
    }
}

TEST_CASE("messy whitespace and decomposed text are normalized") {
    // Record 1: raw title "  Manuscript   001 ".
    const DescriptiveRecord one = parse_dc(harvested(1));
    REQUIRE(one.titles.size() == 1);
    CHECK(one.titles[0] == "Manuscript 001");

    // Record 3: second title written with a decomposed e-with-ogonek.
    const DescriptiveRecord three = parse_dc(harvested(3));
    REQUIRE(three.titles.size() == 2);
    CHECK(three.titles[1] == "R\xC4\x99kopis iluminowany nr 3");

    // Record 5: escaped markup round-trips through XML.
    const DescriptiveRecord five = parse_dc(harvested(5));
    REQUIRE(five.titles.size() == 2);
    CHECK(five.titles[1] == "Notes & glosses <ca. 1500>");
}

TEST_CASE("duplicate values collapse keeping first occurrence") {
    // Record 2 repeats its first subject in the raw feed.
    const DescriptiveRecord two = parse_dc(harvested(2));
    CHECK(two.subjects == std::vector<std::string>{"astronomy", "r\xC4\x99kopisy iluminowane"});
}

TEST_CASE("unmapped elements land in extras") {
    const DescriptiveRecord five = parse_dc(harvested(5));
    REQUIRE(five.extras.count("description") == 1);
    CHECK(five.extras.at("description") ==
          std::vector<std::string>{"Bound volume with marginal notes, item 5."});
    CHECK(five.field_provenance.at("extras") == "harvested");

    const DescriptiveRecord nine = parse_dc(harvested(9));
    REQUIRE(nine.extras.count("publisher") == 1);
    CHECK(nine.extras.at("publisher") == std::vector<std::string>{"Officina Bibliothecae"});

    // Records not divisible by 5 or 9 have no extras and no provenance key.
    const DescriptiveRecord two = parse_dc(harvested(2));
    CHECK(two.extras.empty());
    CHECK(two.field_provenance.count("extras") == 0);
}

TEST_CASE("provenance marks every populated field harvested") {
    const DescriptiveRecord record = parse_dc(harvested(4));
    for (const char* field : {"titles", "creators", "dates", "subjects", "types", "languages",
                              "rights", "identifiers"}) {
        CAPTURE(field);
        REQUIRE(record.field_provenance.count(field) == 1);
        CHECK(record.field_provenance.at(field) == "harvested");
    }
}

TEST_CASE("normalize is idempotent and drops empties") {
    DescriptiveRecord raw;
    raw.source_identifier = "oai:x:1";
    raw.titles = {"  A   B ", "", "A B", "C"};
    raw.creators = {"  "};
    raw.subjects = {"x"};
    raw.extras["description"] = {" d  1 ", "", " d  1 "};
    raw.field_provenance["titles"] = "harvested";
    raw.field_provenance["subjects"] = "harvested";
    raw.field_provenance["extras"] = "harvested";

    const DescriptiveRecord once = normalize(raw);
    CHECK(once.titles == std::vector<std::string>{"A B", "C"});
    CHECK(once.creators.empty());
    CHECK(once.subjects == std::vector<std::string>{"x"});
    CHECK(once.extras.at("description") == std::vector<std::string>{"d 1"});
    CHECK(normalize(once) == once);
}

TEST_CASE("normalize keeps enriched provenance") {
    DescriptiveRecord record;
    record.source_identifier = "oai:x:1";
    record.subjects = {"liturgy"};
    record.field_provenance["subjects"] = "enriched";
    const DescriptiveRecord normalized = normalize(record);
    CHECK(normalized.field_provenance.at("subjects") == "enriched");
}

TEST_CASE("json round-trip preserves every corpus record") {
    for (int n : {1, 2, 3, 5, 9, 20, 45, 99, 150}) {
        CAPTURE(n);
        const DescriptiveRecord record = parse_dc(harvested(n));
        const std::string bytes = to_json(record);
        CHECK(from_json(bytes) == record);
        // Serialization is deterministic.
        CHECK(to_json(from_json(bytes)) == bytes);
    }
}

TEST_CASE("json output is stable and human-ordered") {
    const DescriptiveRecord record = parse_dc(harvested(2));
    const std::string bytes = to_json(record);
    CHECK(bytes.find("\"source_identifier\": \"oai:jbc:00002\"") != std::string::npos);
    CHECK(bytes.back() == '\n');
}

TEST_CASE("lenient namespace handling") {
    // Same payload, dc elements in no namespace at all: tolerated.
    oai::Record record;
    record.identifier = "oai:x:7";
    record.metadata_xml =
        "<oai_dc:dc xmlns:oai_dc=\"http://www.openarchives.org/OAI/2.0/oai_dc/\">"
        "<title>Bare Title</title><creator>Bare Creator</creator></oai_dc:dc>";
    const DescriptiveRecord parsed = parse_dc(record);
    CHECK(parsed.titles == std::vector<std::string>{"Bare Title"});
    CHECK(parsed.creators == std::vector<std::string>{"Bare Creator"});

    // A record whose metadata is not oai_dc at all has no payload.
    oai::Record wrong;
    wrong.identifier = "oai:x:8";
    wrong.metadata_xml = "<marc xmlns=\"urn:other\"><field/></marc>";
    CHECK_THROWS_AS(parse_dc(wrong), NoDcPayload);
}
