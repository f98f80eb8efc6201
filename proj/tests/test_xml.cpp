// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "folio/xml.hpp"

using namespace folio::xml;

TEST_CASE("basic document structure") {
    const Document doc = parse("<?xml version=\"1.0\"?><root a=\"1\"><child>text</child><child/></root>");
    REQUIRE(doc.root != nullptr);
    CHECK(doc.root->name == "root");
    CHECK(doc.root->local == "root");
    CHECK(doc.root->ns_uri == "");
    REQUIRE(doc.root->attribute("a") != nullptr);
    CHECK(*doc.root->attribute("a") == "1");
    CHECK(doc.root->attribute("missing") == nullptr);
    const auto children = doc.root->children_named("", "child");
    REQUIRE(children.size() == 2);
    CHECK(children[0]->text() == "text");
    CHECK(children[1]->text() == "");
}

TEST_CASE("namespace resolution") {
    const Document doc = parse(
        "<a:root xmlns:a=\"urn:one\" xmlns=\"urn:def\">"
        "<leaf/><a:leaf/>"
        "<b:leaf xmlns:b=\"urn:two\"/>"
        "<inner xmlns=\"urn:three\"><leaf/></inner>"
        "</a:root>");
    const Element& root = *doc.root;
    CHECK(root.ns_uri == "urn:one");
    CHECK(root.local == "root");
    const auto kids = root.child_elements();
    REQUIRE(kids.size() == 4);
    CHECK(kids[0]->ns_uri == "urn:def");   // default namespace
    CHECK(kids[1]->ns_uri == "urn:one");   // prefixed
    CHECK(kids[2]->ns_uri == "urn:two");   // locally declared
    CHECK(kids[3]->ns_uri == "urn:three");
    CHECK(kids[3]->child_elements()[0]->ns_uri == "urn:three");  // inherited default
    // The default namespace does not apply to attributes.
    const Document attr_doc = parse("<r xmlns=\"urn:d\" x=\"1\"/>");
    CHECK(attr_doc.root->attributes[0].ns_uri == "");
}

TEST_CASE("unbound prefix is tolerated") {
    const Document doc = parse("<dc:title>T</dc:title>");
    CHECK(doc.root->name == "dc:title");
    CHECK(doc.root->local == "title");
    CHECK(doc.root->ns_uri == "");
}

TEST_CASE("entities and character references") {
    const Document doc = parse("<t>&lt;&gt;&amp;&quot;&apos; &#65;&#x42;&#x142;</t>");
    CHECK(doc.root->text() == "<>&\"' AB\xC5\x82");
}

TEST_CASE("cdata, comments, and processing instructions") {
    const Document doc = parse("<t><!-- ignore --><![CDATA[<raw & text>]]><?pi data?>tail</t>");
    CHECK(doc.root->text() == "<raw & text>tail");
}

TEST_CASE("nested text concatenation") {
    const Document doc = parse("<t>a<b>b1<c>c1</c></b>d</t>");
    CHECK(doc.root->text() == "ab1c1d");
}

TEST_CASE("whitespace in text is preserved verbatim") {
    const Document doc = parse("<t>  two  words \n</t>");
    CHECK(doc.root->text() == "  two  words \n");
}

TEST_CASE("malformed documents throw with offsets") {
    const char* bad[] = {
        "",
        "no markup",
        "<unclosed>",
        "<a></b>",
        "<a attr></a>",
        "<a 1bad=\"x\"/>",
        "<a><b></a></b>",
        "<a>&unknown;</a>",
        "<a>&#xZZ;</a>",
        "<a><!-- unterminated</a>",
        "<a]/>",
        "< a/>",
        "<a/><b/>",  // two roots
    };
    for (const char* input : bad) {
        CAPTURE(input);
        CHECK_THROWS_AS(parse(input), MalformedError);
    }
    try {
        parse("<a></b>");
        FAIL("expected throw");
    } catch (const MalformedError& e) {
        CHECK(e.code() == "E_XML_MALFORMED");
        CHECK(std::string(e.what()).find("byte") != std::string::npos);
    }
}

TEST_CASE("attribute quoting styles") {
    const Document doc = parse("<a one=\"d\" two='s' three=\"a&amp;b\"/>");
    CHECK(*doc.root->attribute("one") == "d");
    CHECK(*doc.root->attribute("two") == "s");
    CHECK(*doc.root->attribute("three") == "a&b");
}

TEST_CASE("byte offsets cover the element") {
    const std::string input = "<root> <child>x</child> </root>";
    const Document doc = parse(input);
    const Element* child = doc.root->first_child("", "child");
    REQUIRE(child != nullptr);
    CHECK(input.substr(child->begin, child->end - child->begin) == "<child>x</child>");
}

TEST_CASE("oai-style document") {
    const Document doc = parse(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<OAI-PMH xmlns=\"http://www.openarchives.org/OAI/2.0/\">\n"
        "  <request verb=\"ListRecords\">http://x/oai</request>\n"
        "  <ListRecords>\n"
        "    <record><header status=\"deleted\"><identifier>oai:x:1</identifier></header></record>\n"
        "  </ListRecords>\n"
        "</OAI-PMH>");
    const char* ns = "http://www.openarchives.org/OAI/2.0/";
    const Element* list = doc.root->first_child(ns, "ListRecords");
    REQUIRE(list != nullptr);
    const Element* record = list->first_child(ns, "record");
    REQUIRE(record != nullptr);
    const Element* header = record->first_child(ns, "header");
    REQUIRE(header != nullptr);
    REQUIRE(header->attribute("status") != nullptr);
    CHECK(*header->attribute("status") == "deleted");
    CHECK(header->first_child(ns, "identifier")->text() == "oai:x:1");
}
