// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "folio/error.hpp"

namespace folio::config {

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("E_CONFIG", message) {}
};

// Tunable pipeline parameters with their default values. Every knob can be
// overridden by a JSON config file and, where a CLI flag exists, by the flag.
struct Config {
    // Detection ingestion.
    double min_confidence = 0.0;
    double dedupe_iou = 1.0;

    // Enrichment condition thresholds.
    double stained = 0.02;
    double heavily_stained = 0.10;

    // Reconciliation score thresholds.
    double recon_link = 0.92;
    double recon_review = 0.85;

    // External services.
    std::string oai_endpoint;
    std::string search_endpoint;
    double search_per_second = 2.0;

    bool operator==(const Config&) const = default;
};

// Parses a JSON config document. Unknown keys are rejected so typos in a
// config file fail loudly instead of silently using defaults.
Config parse_config(const std::string& bytes);

// Reads and parses a config file from disk.
Config load_config(const std::string& path);

std::string to_json(const Config& config);

}  // namespace folio::config
