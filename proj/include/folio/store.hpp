// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

// Content-addressed flat-file store: stage directories plus a manifest
// mapping each relative path to its SHA-256, producing stage and command.
#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "folio/error.hpp"

namespace folio::store {

class EmptyIdentifier : public Error {
public:
    EmptyIdentifier() : Error("E_STORE_EMPTY_ID", "identifier must be non-empty") {}
};

class ManifestMissing : public Error {
public:
    explicit ManifestMissing(const std::string& message) : Error("E_STORE_NO_MANIFEST", message) {}
};

class StoreLocked : public Error {
public:
    explicit StoreLocked(const std::string& message) : Error("E_STORE_LOCKED", message) {}
};

// Percent-encodes every byte outside [A-Za-z0-9._-]; injective and
// reversible by percent-decoding.
std::string sanitize_id(const std::string& identifier);

std::string sha256_hex(std::string_view bytes);

struct ManifestEntry {
    std::string sha256;
    std::string stage;  // raw | record | detections | enriched | graph | links
    std::string produced_by;
    std::string timestamp;  // UTC, second granularity

    bool operator==(const ManifestEntry&) const = default;
};

// UTC timestamp source, injectable so tests can freeze the clock.
using Clock = std::function<std::string()>;

inline constexpr std::array<const char*, 6> kStageDirs = {"raw", "records", "detections", "enriched", "graph",
                                                          "links"};

class Store {
public:
    explicit Store(std::filesystem::path root, Clock clock = {});

    const std::filesystem::path& root() const { return root_; }

    // Writes bytes atomically (temp file then rename) and records the
    // manifest entry. Content equal to the recorded digest keeps the
    // original timestamp, so re-running a stage leaves the manifest
    // byte-identical.
    void put(const std::string& relative_path, std::string_view bytes, const std::string& stage,
             const std::string& produced_by);

    bool has(const std::string& relative_path) const;
    std::string read(const std::string& relative_path) const;

    // Manifest paths of one stage, sorted.
    std::vector<std::string> stage_paths(const std::string& stage) const;

    const std::map<std::string, ManifestEntry>& manifest() const { return manifest_; }

    // Atomically rewrites manifest.json.
    void save_manifest() const;

private:
    std::filesystem::path root_;
    Clock clock_;
    std::map<std::string, ManifestEntry> manifest_;
};

struct VerifyReport {
    std::vector<std::string> missing;   // listed in the manifest, not on disk
    std::vector<std::string> modified;  // digest mismatch

    bool clean() const { return missing.empty() && modified.empty(); }
};

// Re-hashes every manifest entry. Throws ManifestMissing when the store
// has no manifest.json.
VerifyReport verify_store(const std::filesystem::path& root);

// Advisory exclusive lock on <root>/.lock; one pipeline invocation owns
// the store at a time.
class StoreLock {
public:
    explicit StoreLock(const std::filesystem::path& root);
    ~StoreLock();

    StoreLock(const StoreLock&) = delete;
    StoreLock& operator=(const StoreLock&) = delete;

private:
    int fd_ = -1;
};

}  // namespace folio::store
