// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <random>
#include <string>
#include <vector>

#include "folio/http.hpp"
#include "folio/recon.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace folio;
using namespace folio::recon;

namespace {

// Serves one canned response per request and records the URLs.
class CannedTransport : public http::Transport {
public:
    std::vector<http::Response> responses;
    std::vector<std::string> urls;

    http::Response get(const std::string& url) override {
        urls.push_back(url);
        if (responses.empty())
            throw http::TransportError("no canned response");
        http::Response response = responses.front();
        if (responses.size() > 1)
            responses.erase(responses.begin());
        return response;
    }
};

std::string random_label(std::mt19937& rng) {
    static const std::vector<std::string> alphabet = {
        "a", "b", "c", "d", "e", "m", "n", "o", "r", "s", "t", " ", "\xC5\x82", "\xC3\xB3", "z"};
    std::uniform_int_distribution<int> len(0, 12);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::string out;
    const int n = len(rng);
    for (int i = 0; i < n; ++i)
        out += alphabet[pick(rng)];
    return out;
}

}  // namespace

TEST_CASE("normalize_name folds case, marks, and spacing") {
    CHECK(normalize_name("Kazimierz Wro\xCC\x81"
                         "bel") == "kazimierz wrobel");
    CHECK(normalize_name("Kazimierz Wr\xC3\xB3"
                         "bel") == "kazimierz wrobel");
    CHECK(normalize_name("  INCUNABULA \t") == "incunabula");
    CHECK(normalize_name("Henryk  Zieli\xC5\x84ski") == "henryk zielinski");
    // The stroked l carries no combining mark, so it survives folding.
    CHECK(normalize_name("Ma\xC5\x82gorzata") == "ma\xC5\x82gorzata");
    CHECK(normalize_name("Jan\xC2\xA0Kowalczyk") == "jan kowalczyk");
    CHECK(normalize_name("") == "");
}

TEST_CASE("similarity pins") {
    CHECK(similarity("martha", "martha") == 1.0);
    CHECK(similarity("", "") == 1.0);
    CHECK(similarity("a", "") == 0.0);
    CHECK(similarity("", "a") == 0.0);
    CHECK(similarity("abc", "xyz") == 0.0);
    // The worked example: 0.944 Jaro plus a 3-character prefix bonus.
    CHECK(similarity("martha", "marhta") == doctest::Approx(0.961111111111).epsilon(1e-9));
    CHECK(similarity("martha", "marta") == doctest::Approx(0.966666666667).epsilon(1e-9));
    CHECK(similarity("dixon", "dicksonx") == doctest::Approx(0.813333333333).epsilon(1e-9));
    // Symmetry.
    CHECK(similarity("marhta", "martha") == similarity("martha", "marhta"));
}

TEST_CASE("similarity agrees with the reference scorer on random pairs") {
    std::mt19937 rng(20260822);
    for (int i = 0; i < 1000; ++i) {
        const std::string a = random_label(rng);
        const std::string b = random_label(rng);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(similarity(a, b) == doctest::Approx(oracles::jaro_winkler(a, b)).epsilon(1e-9));
        CHECK(similarity(a, b) == similarity(b, a));
        CHECK(similarity(a, a) == 1.0);
    }
}

TEST_CASE("fixture client: missing key, null value, malformed fixtures") {
    FixtureSearchClient client(corpus::recon_registry_json());
    CHECK(client.search("Codex Peregrinus").empty());
    CHECK_THROWS_AS(client.search("Nieznany Skryba"), ClientUnavailable);
    const auto hits = client.search("martha");
    REQUIRE(hits.size() == 2);
    CHECK(hits[0] == Candidate{"https://registry.example/entity/Q306", "marhta"});
    CHECK(hits[1] == Candidate{"https://registry.example/entity/Q307", "marta"});

    CHECK_THROWS_AS(FixtureSearchClient("not json"), Error);
    CHECK_THROWS_AS(FixtureSearchClient("[]"), Error);
    FixtureSearchClient bad_entry(R"({"x": [{"iri": "only"}]})");
    CHECK_THROWS_AS(bad_entry.search("x"), ClientUnavailable);
}

TEST_CASE("the corpus labels partition into the documented buckets") {
    FixtureSearchClient client(corpus::recon_registry_json());
    const ReconcileResult result = reconcile(corpus::recon_labels(), client);

    const std::vector<std::pair<std::string, std::string>> expected_links = {
        {"Aleksander Brzozowski", "https://registry.example/entity/Q100"},
        {"Zofia Gajewska", "https://registry.example/entity/Q101"},
        {"astronomy", "https://registry.example/entity/Q202"},
        {"liturgy", "https://registry.example/entity/Q201"},
        {"Kazimierz Wr\xC3\xB3"
         "bel",
         "https://registry.example/entity/Q300"},
        {"INCUNABULA", "https://registry.example/entity/Q301"},
        {"Jadwiga Soko\xC5\x82owska", "https://registry.example/entity/Q103"},
        {"Henryk Zielinski", "https://registry.example/entity/Q302"},
        {"Piotr Jastrzebski", "https://registry.example/entity/Q303"},
        {"canon law", "https://registry.example/entity/Q203"},
        {"Malgorzata Kwiatkowska", "https://registry.example/entity/Q304"},
        {"Tomasz Labedz", "https://registry.example/entity/Q305"},
        {"martha", "https://registry.example/entity/Q307"},
    };
    CHECK(result.links == expected_links);

    REQUIRE(result.candidates.size() == 6);
    const auto& c = result.candidates;
    CHECK(c[0].query == "Jan Kowalczyk");
    CHECK(c[0].external_iri == "https://registry.example/entity/Q310");
    CHECK(c[0].external_label == "Jan Kowalewski");
    CHECK(c[0].score == doctest::Approx(0.896703297).epsilon(1e-8));
    CHECK(c[1].query == "medycyna");
    CHECK(c[1].external_iri == "https://registry.example/entity/Q311");
    CHECK(c[1].score == doctest::Approx(0.883333333).epsilon(1e-8));
    CHECK(c[2].query == "Mikolaj Borowik");
    CHECK(c[2].external_iri == "https://registry.example/entity/Q312");
    CHECK(c[2].score == doctest::Approx(0.902393162).epsilon(1e-8));
    // Two candidates for one label arrive best first.
    CHECK(c[3].query == "history of law");
    CHECK(c[3].external_iri == "https://registry.example/entity/Q313");
    CHECK(c[3].score == doctest::Approx(0.904761905).epsilon(1e-8));
    CHECK(c[4].query == "history of law");
    CHECK(c[4].external_iri == "https://registry.example/entity/Q314");
    CHECK(c[4].score == doctest::Approx(0.861183261).epsilon(1e-8));
    CHECK(c[5].query == "Barbara Sowinska");
    CHECK(c[5].external_iri == "https://registry.example/entity/Q315");
    CHECK(c[5].score == doctest::Approx(0.916269841).epsilon(1e-8));

    // Outages are skipped with the client's reason; every score at or above
    // review must be strictly below link here.
    REQUIRE(result.skipped.size() == 2);
    CHECK(result.skipped[0].first == "Nieznany Skryba");
    CHECK(result.skipped[0].second == "registry unavailable for 'Nieznany Skryba'");
    CHECK(result.skipped[1].first == "Anonim Krakowski");
    for (const ReconCandidate& candidate : c) {
        CHECK(candidate.score < Thresholds{}.link);
        if (candidate.query != "history of law" || candidate.external_iri.ends_with("Q313"))
            CHECK(candidate.score >= Thresholds{}.review);
    }

    // Rejected and absent labels appear nowhere.
    for (const char* gone : {"grammar", "Ewa Lisowska", "music notation", "theologia moralis",
                             "Opat Benedyktynski", "Liber Precum", "Codex Peregrinus",
                             "Hortulus Animae", "Vita Sancti", "Psalterium Gallicanum"}) {
        for (const auto& [label, iri] : result.links)
            CHECK(label != gone);
        for (const ReconCandidate& candidate : c)
            CHECK(candidate.query != gone);
        for (const auto& [label, reason] : result.skipped)
            CHECK(label != gone);
    }
}

TEST_CASE("link score ties break toward the smaller iri") {
    FixtureSearchClient client(R"({"alpha": [
        {"iri": "https://r.example/b", "label": "alpha"},
        {"iri": "https://r.example/a", "label": "alpha"}
    ]})");
    const ReconcileResult result = reconcile({"alpha"}, client);
    REQUIRE(result.links.size() == 1);
    CHECK(result.links[0].second == "https://r.example/a");
}

TEST_CASE("raising the cutoffs demotes labels monotonically") {
    FixtureSearchClient client(corpus::recon_registry_json());

    // Link cutoff above the near-match scores: those labels fall to review.
    Thresholds strict;
    strict.link = 0.99;
    strict.review = 0.85;
    const ReconcileResult r1 = reconcile(corpus::recon_labels(), client, strict);
    CHECK(r1.links.size() == 10);  // exact and normalization-equal survive
    bool martha_in_review = false;
    for (const ReconCandidate& candidate : r1.candidates)
        martha_in_review = martha_in_review || candidate.query == "martha";
    CHECK(martha_in_review);

    // Review cutoff above every review score: the queue empties.
    Thresholds narrow;
    narrow.link = 0.92;
    narrow.review = 0.92;
    const ReconcileResult r2 = reconcile(corpus::recon_labels(), client, narrow);
    CHECK(r2.links.size() == 13);
    CHECK(r2.candidates.empty());

    // Lowering review to zero admits even distant labels to the queue.
    Thresholds loose;
    loose.link = 0.92;
    loose.review = 0.0;
    const ReconcileResult r3 = reconcile(corpus::recon_labels(), client, loose);
    bool grammar_reviewed = false;
    for (const ReconCandidate& candidate : r3.candidates)
        grammar_reviewed = grammar_reviewed || candidate.query == "grammar";
    CHECK(grammar_reviewed);
}

TEST_CASE("live client queries, paces, and maps failures") {
    CannedTransport transport;
    http::Response ok;
    ok.status = 200;
    ok.body = R"([{"iri": "https://r.example/1", "label": "one"}])";
    transport.responses = {ok};

    std::vector<std::chrono::milliseconds> sleeps;
    LiveSearchClient::Options options;
    options.requests_per_second = 2.0;
    options.sleeper = [&sleeps](std::chrono::milliseconds d) { sleeps.push_back(d); };
    LiveSearchClient client("https://reg.example/search", transport, options);

    const auto first = client.search("canon law");
    REQUIRE(first.size() == 1);
    CHECK(first[0] == Candidate{"https://r.example/1", "one"});
    REQUIRE(transport.urls.size() == 1);
    CHECK(transport.urls[0] == "https://reg.example/search?query=canon%20law");
    CHECK(sleeps.empty());

    // A second query inside the pacing window sleeps the remainder.
    (void)client.search("liturgy");
    CHECK(transport.urls[1] == "https://reg.example/search?query=liturgy");
    REQUIRE(sleeps.size() == 1);
    CHECK(sleeps[0].count() > 0);
    CHECK(sleeps[0].count() <= 500);

    // Endpoint with existing query string appends with '&'.
    CannedTransport transport2;
    transport2.responses = {ok};
    LiveSearchClient client2("https://reg.example/search?lang=pl", transport2);
    (void)client2.search("x");
    CHECK(transport2.urls[0] == "https://reg.example/search?lang=pl&query=x");
}

TEST_CASE("live client failure modes become ClientUnavailable") {
    LiveSearchClient::Options quiet;
    quiet.sleeper = [](std::chrono::milliseconds) {};

    CannedTransport down;  // no canned responses: transport throws
    LiveSearchClient dead("https://reg.example/s", down, quiet);
    CHECK_THROWS_AS(dead.search("x"), ClientUnavailable);

    CannedTransport error_status;
    http::Response bad;
    bad.status = 503;
    error_status.responses = {bad};
    LiveSearchClient busy("https://reg.example/s", error_status, quiet);
    CHECK_THROWS_AS(busy.search("x"), ClientUnavailable);

    CannedTransport malformed;
    http::Response garbled;
    garbled.status = 200;
    garbled.body = "not json";
    malformed.responses = {garbled};
    LiveSearchClient garbles("https://reg.example/s", malformed, quiet);
    CHECK_THROWS_AS(garbles.search("x"), ClientUnavailable);
}

TEST_CASE("live client honors custom field names and results key") {
    CannedTransport transport;
    http::Response ok;
    ok.status = 200;
    ok.body = R"({"hits": [{"id": "https://r.example/9", "name": "nine"}]})";
    transport.responses = {ok};
    LiveSearchClient::Options options;
    options.iri_field = "id";
    options.label_field = "name";
    options.results_key = "hits";
    options.sleeper = [](std::chrono::milliseconds) {};
    LiveSearchClient client("https://reg.example/s", transport, options);
    const auto hits = client.search("nine");
    REQUIRE(hits.size() == 1);
    CHECK(hits[0] == Candidate{"https://r.example/9", "nine"});

    // Missing results key is a failure, not an empty result.
    http::Response missing;
    missing.status = 200;
    missing.body = R"({"other": []})";
    transport.responses = {missing};
    CHECK_THROWS_AS(client.search("ten"), ClientUnavailable);
}
