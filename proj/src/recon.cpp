// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/recon.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "folio/text.hpp"
#include "folio/unicode.hpp"

namespace folio::recon {

namespace {

using json = nlohmann::json;

std::vector<Candidate> parse_candidate_array(const json& node, const std::string& iri_field,
                                             const std::string& label_field) {
    if (!node.is_array())
        throw ClientUnavailable("registry response is not a candidate array");
    std::vector<Candidate> out;
    for (const json& item : node) {
        if (!item.is_object() || !item.contains(iri_field) || !item.contains(label_field))
            throw ClientUnavailable("candidate entry lacks '" + iri_field + "'/'" + label_field + "'");
        out.push_back({item.at(iri_field).get<std::string>(), item.at(label_field).get<std::string>()});
    }
    return out;
}

}  // namespace

struct FixtureSearchClient::Impl {
    json doc;
};

FixtureSearchClient::FixtureSearchClient(const std::string& json_bytes) : impl_(std::make_shared<Impl>()) {
    try {
        impl_->doc = json::parse(json_bytes);
    } catch (const json::parse_error& e) {
        throw Error("E_RECON_FIXTURE", std::string("fixture is not valid JSON: ") + e.what());
    }
    if (!impl_->doc.is_object())
        throw Error("E_RECON_FIXTURE", "fixture must be an object mapping query to candidates");
}

FixtureSearchClient FixtureSearchClient::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("E_RECON_FIXTURE", "cannot open fixture '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return FixtureSearchClient(buffer.str());
}

std::vector<Candidate> FixtureSearchClient::search(const std::string& label) {
    const auto it = impl_->doc.find(label);
    if (it == impl_->doc.end())
        return {};
    if (it->is_null())
        throw ClientUnavailable("registry unavailable for '" + label + "'");
    return parse_candidate_array(*it, "iri", "label");
}

LiveSearchClient::LiveSearchClient(std::string endpoint, http::Transport& transport)
    : LiveSearchClient(std::move(endpoint), transport, Options()) {}

LiveSearchClient::LiveSearchClient(std::string endpoint, http::Transport& transport, Options options)
    : endpoint_(std::move(endpoint)), transport_(transport), options_(std::move(options)) {}

std::vector<Candidate> LiveSearchClient::search(const std::string& label) {
    using namespace std::chrono;
    if (options_.requests_per_second > 0 && last_request_.time_since_epoch().count() != 0) {
        const auto interval = milliseconds(static_cast<long>(1000.0 / options_.requests_per_second));
        const auto elapsed = duration_cast<milliseconds>(steady_clock::now() - last_request_);
        if (elapsed < interval) {
            const auto wait = interval - elapsed;
            if (options_.sleeper)
                options_.sleeper(wait);
            else
                std::this_thread::sleep_for(wait);
        }
    }
    last_request_ = steady_clock::now();

    const std::string url =
        endpoint_ + (endpoint_.find('?') == std::string::npos ? "?" : "&") + "query=" + text::percent_encode(label);
    http::Response response;
    try {
        response = transport_.get(url);
    } catch (const http::TransportError& e) {
        throw ClientUnavailable(e.what());
    }
    if (response.status != 200)
        throw ClientUnavailable("registry answered HTTP " + std::to_string(response.status));
    json doc;
    try {
        doc = json::parse(response.body);
    } catch (const json::parse_error& e) {
        throw ClientUnavailable(std::string("registry answered malformed JSON: ") + e.what());
    }
    const json* results = &doc;
    if (!options_.results_key.empty()) {
        if (!doc.is_object() || !doc.contains(options_.results_key))
            throw ClientUnavailable("registry response lacks '" + options_.results_key + "'");
        results = &doc.at(options_.results_key);
    }
    return parse_candidate_array(*results, options_.iri_field, options_.label_field);
}

std::string normalize_name(std::string_view s) {
    return unicode::fold_name(s);
}

double similarity(std::string_view a, std::string_view b) {
    const std::u32string s = unicode::decode_utf8(a);
    const std::u32string t = unicode::decode_utf8(b);
    if (s == t)
        return 1.0;
    if (s.empty() || t.empty())
        return 0.0;

    const std::size_t half = std::max(s.size(), t.size()) / 2;
    const std::size_t window = half > 0 ? half - 1 : 0;
    std::vector<bool> s_matched(s.size(), false);
    std::vector<bool> t_matched(t.size(), false);
    std::size_t matches = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t lo = i > window ? i - window : 0;
        const std::size_t hi = std::min(t.size(), i + window + 1);
        for (std::size_t j = lo; j < hi; ++j) {
            if (t_matched[j] || s[i] != t[j])
                continue;
            s_matched[i] = true;
            t_matched[j] = true;
            ++matches;
            break;
        }
    }
    if (matches == 0)
        return 0.0;

    std::size_t transpositions = 0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!s_matched[i])
            continue;
        while (!t_matched[k])
            ++k;
        if (s[i] != t[k])
            ++transpositions;
        ++k;
    }
    const double m = static_cast<double>(matches);
    const double jaro = (m / static_cast<double>(s.size()) + m / static_cast<double>(t.size()) +
                         (m - static_cast<double>(transpositions / 2)) / m) /
                        3.0;

    std::size_t prefix = 0;
    while (prefix < 4 && prefix < s.size() && prefix < t.size() && s[prefix] == t[prefix])
        ++prefix;
    return jaro + static_cast<double>(prefix) * 0.1 * (1.0 - jaro);
}

ReconcileResult reconcile(const std::vector<std::string>& labels, SearchClient& client,
                          const Thresholds& thresholds) {
    ReconcileResult result;
    for (const std::string& label : labels) {
        std::vector<Candidate> found;
        try {
            found = client.search(label);
        } catch (const ClientUnavailable& e) {
            result.skipped.emplace_back(label, e.what());
            continue;
        }
        if (found.empty())
            continue;

        const std::string key = normalize_name(label);
        std::vector<ReconCandidate> scored;
        scored.reserve(found.size());
        for (const Candidate& candidate : found)
            scored.push_back({label, candidate.iri, candidate.label, similarity(key, normalize_name(candidate.label))});
        std::sort(scored.begin(), scored.end(), [](const ReconCandidate& a, const ReconCandidate& b) {
            if (a.score != b.score)
                return a.score > b.score;
            return a.external_iri < b.external_iri;
        });

        const ReconCandidate& top = scored.front();
        if (top.score >= thresholds.link) {
            result.links.emplace_back(label, top.external_iri);
        } else if (top.score >= thresholds.review) {
            for (ReconCandidate& candidate : scored)
                result.candidates.push_back(std::move(candidate));
        }
    }
    return result;
}

}  // namespace folio::recon
