// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace folio::config {

namespace {

using nlohmann::json;

double require_number(const json& value, const std::string& path) {
    if (!value.is_number())
        throw ConfigError(path + ": expected a number");
    return value.get<double>();
}

std::string require_string(const json& value, const std::string& path) {
    if (!value.is_string())
        throw ConfigError(path + ": expected a string");
    return value.get<std::string>();
}

void check_keys(const json& object, const std::string& path, std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : object.items()) {
        bool known = false;
        for (const char* name : allowed)
            if (key == name)
                known = true;
        if (!known)
            throw ConfigError(path + ": unknown key \"" + key + "\"");
    }
}

}  // namespace

Config parse_config(const std::string& bytes) {
    json doc = json::parse(bytes, nullptr, false);
    if (doc.is_discarded())
        throw ConfigError("config is not valid JSON");
    if (!doc.is_object())
        throw ConfigError("config root must be an object");
    check_keys(doc, "config", {"thresholds", "endpoints", "rate_limits"});

    Config out;
    if (doc.contains("thresholds")) {
        const json& t = doc["thresholds"];
        if (!t.is_object())
            throw ConfigError("thresholds: expected an object");
        check_keys(t, "thresholds",
                   {"min_confidence", "dedupe_iou", "stained", "heavily_stained", "recon_link", "recon_review"});
        if (t.contains("min_confidence"))
            out.min_confidence = require_number(t["min_confidence"], "thresholds.min_confidence");
        if (t.contains("dedupe_iou"))
            out.dedupe_iou = require_number(t["dedupe_iou"], "thresholds.dedupe_iou");
        if (t.contains("stained"))
            out.stained = require_number(t["stained"], "thresholds.stained");
        if (t.contains("heavily_stained"))
            out.heavily_stained = require_number(t["heavily_stained"], "thresholds.heavily_stained");
        if (t.contains("recon_link"))
            out.recon_link = require_number(t["recon_link"], "thresholds.recon_link");
        if (t.contains("recon_review"))
            out.recon_review = require_number(t["recon_review"], "thresholds.recon_review");
    }
    if (doc.contains("endpoints")) {
        const json& e = doc["endpoints"];
        if (!e.is_object())
            throw ConfigError("endpoints: expected an object");
        check_keys(e, "endpoints", {"oai", "search"});
        if (e.contains("oai"))
            out.oai_endpoint = require_string(e["oai"], "endpoints.oai");
        if (e.contains("search"))
            out.search_endpoint = require_string(e["search"], "endpoints.search");
    }
    if (doc.contains("rate_limits")) {
        const json& r = doc["rate_limits"];
        if (!r.is_object())
            throw ConfigError("rate_limits: expected an object");
        check_keys(r, "rate_limits", {"search_per_second"});
        if (r.contains("search_per_second")) {
            out.search_per_second = require_number(r["search_per_second"], "rate_limits.search_per_second");
            if (out.search_per_second <= 0.0)
                throw ConfigError("rate_limits.search_per_second: must be positive");
        }
    }

    if (out.min_confidence < 0.0 || out.min_confidence > 1.0)
        throw ConfigError("thresholds.min_confidence: must be within [0, 1]");
    if (out.dedupe_iou < 0.0 || out.dedupe_iou > 1.0)
        throw ConfigError("thresholds.dedupe_iou: must be within [0, 1]");
    if (out.stained < 0.0 || out.heavily_stained < out.stained)
        throw ConfigError("thresholds: require 0 <= stained <= heavily_stained");
    if (out.recon_review > out.recon_link)
        throw ConfigError("thresholds: require recon_review <= recon_link");
    return out;
}

Config load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

std::string to_json(const Config& config) {
    nlohmann::ordered_json doc;
    doc["thresholds"] = {
        {"min_confidence", config.min_confidence}, {"dedupe_iou", config.dedupe_iou},
        {"stained", config.stained},               {"heavily_stained", config.heavily_stained},
        {"recon_link", config.recon_link},         {"recon_review", config.recon_review},
    };
    doc["endpoints"] = {{"oai", config.oai_endpoint}, {"search", config.search_endpoint}};
    doc["rate_limits"] = {{"search_per_second", config.search_per_second}};
    return doc.dump(2) + "\n";
}

}  // namespace folio::config
