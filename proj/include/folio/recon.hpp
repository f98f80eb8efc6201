// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// Entity reconciliation: link creator and subject labels to external
// registries by normalized string similarity.
#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "folio/error.hpp"
#include "folio/http.hpp"

namespace folio::recon {

class ClientUnavailable : public Error {
public:
    explicit ClientUnavailable(const std::string& message) : Error("E_RECON_CLIENT", message) {}
};

// One search hit from a registry.
struct Candidate {
    std::string iri;
    std::string label;

    bool operator==(const Candidate&) const = default;
};

// Scored candidate surfaced for human review.
struct ReconCandidate {
    std::string query;
    std::string external_iri;
    std::string external_label;
    double score = 0;

    bool operator==(const ReconCandidate&) const = default;
};

// The cutoffs are invented defaults: no matching method or threshold is
// prescribed by the source material.
struct Thresholds {
    double link = 0.92;    // top score at or above: emit a sameAs link
    double review = 0.85;  // top score at or above (but below link): emit candidates
};

class SearchClient {
public:
    virtual ~SearchClient() = default;
    // Returns candidates for the label, best-effort ranking not required.
    // Throws ClientUnavailable when the registry cannot be reached.
    virtual std::vector<Candidate> search(const std::string& label) = 0;
};

// Offline client: JSON object mapping query string to a candidate array
// (`[{"iri": ..., "label": ...}, ...]`). A null value simulates an
// unreachable registry for that query; a missing key yields no candidates.
class FixtureSearchClient : public SearchClient {
public:
    explicit FixtureSearchClient(const std::string& json_bytes);
    static FixtureSearchClient from_file(const std::filesystem::path& path);

    std::vector<Candidate> search(const std::string& label) override;

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

// Live client: GET <endpoint>?query=<label>, expecting a JSON array of
// objects with the configured iri/label fields. Requests are spaced to the
// configured rate; the sleeper is injectable for tests.
class LiveSearchClient : public SearchClient {
public:
    struct Options {
        std::string iri_field = "iri";
        std::string label_field = "label";
        std::string results_key;  // empty: the response root is the array
        double requests_per_second = 2.0;
        std::function<void(std::chrono::milliseconds)> sleeper;  // defaults to a real sleep
    };

    LiveSearchClient(std::string endpoint, http::Transport& transport);
    LiveSearchClient(std::string endpoint, http::Transport& transport, Options options);

    std::vector<Candidate> search(const std::string& label) override;

private:
    std::string endpoint_;
    http::Transport& transport_;
    Options options_;
    std::chrono::steady_clock::time_point last_request_{};
};

// Matching key: compatibility-decomposed, marks stripped, lowercased,
// whitespace collapsed and trimmed.
std::string normalize_name(std::string_view s);

// Jaro-Winkler over code points: Jaro base, prefix scale 0.1, prefix
// length capped at 4. Inputs are expected to be normalized already.
double similarity(std::string_view a, std::string_view b);

struct ReconcileResult {
    std::vector<std::pair<std::string, std::string>> links;  // (label, external IRI)
    std::vector<ReconCandidate> candidates;                  // review queue
    std::vector<std::pair<std::string, std::string>> skipped;  // (label, reason)
};

// Scores every candidate against each label on normalized strings. Top
// score >= link emits a link (score ties broken by smaller IRI); top score
// in [review, link) emits the label's scored candidates; below review the
// label is dropped. An unavailable client skips the label and the run
// continues.
ReconcileResult reconcile(const std::vector<std::string>& labels, SearchClient& client,
                          const Thresholds& thresholds = {});

}  // namespace folio::recon
