// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "folio/text.hpp"

namespace folio::store {

namespace {

using json = nlohmann::json;

constexpr char kManifestName[] = "manifest.json";

bool is_safe_byte(unsigned char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '.' || c == '_' ||
           c == '-';
}

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("E_STORE_IO", "cannot open '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Temp-file-then-rename keeps readers from ever seeing a partial write.
void write_atomic(const std::filesystem::path& path, std::string_view bytes) {
    const std::filesystem::path temp = path.parent_path() / (".tmp." + path.filename().string());
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error("E_STORE_IO", "cannot write '" + temp.string() + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out)
            throw Error("E_STORE_IO", "short write to '" + temp.string() + "'");
    }
    std::filesystem::rename(temp, path);
}

std::map<std::string, ManifestEntry> parse_manifest(const std::string& bytes, const std::filesystem::path& path) {
    json doc;
    try {
        doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw Error("E_STORE_MANIFEST", "manifest '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (!doc.is_object())
        throw Error("E_STORE_MANIFEST", "manifest '" + path.string() + "' must be a JSON object");
    std::map<std::string, ManifestEntry> entries;
    for (const auto& [key, value] : doc.items()) {
        ManifestEntry entry;
        value.at("sha256").get_to(entry.sha256);
        value.at("stage").get_to(entry.stage);
        value.at("produced_by").get_to(entry.produced_by);
        value.at("timestamp").get_to(entry.timestamp);
        entries.emplace(key, std::move(entry));
    }
    return entries;
}

std::string serialize_manifest(const std::map<std::string, ManifestEntry>& entries) {
    json doc = json::object();
    for (const auto& [path, entry] : entries) {
        json node;
        node["sha256"] = entry.sha256;
        node["stage"] = entry.stage;
        node["produced_by"] = entry.produced_by;
        node["timestamp"] = entry.timestamp;
        doc[path] = std::move(node);
    }
    return doc.dump(2) + "\n";
}

}  // namespace

std::string sanitize_id(const std::string& identifier) {
    if (identifier.empty())
        throw EmptyIdentifier();
    std::string out;
    out.reserve(identifier.size());
    for (const char c : identifier) {
        if (is_safe_byte(static_cast<unsigned char>(c))) {
            out += c;
        } else {
            static const char* hex = "0123456789ABCDEF";
            const auto b = static_cast<unsigned char>(c);
            out += '%';
            out += hex[b >> 4];
            out += hex[b & 0xF];
        }
    }
    return out;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("E_STORE_HASH", "SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(length * 2);
    for (unsigned int i = 0; i < length; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xF];
    }
    return out;
}

Store::Store(std::filesystem::path root, Clock clock) : root_(std::move(root)), clock_(std::move(clock)) {
    if (!clock_)
        clock_ = utc_now;
    std::filesystem::create_directories(root_);
    for (const char* stage_dir : kStageDirs)
        std::filesystem::create_directories(root_ / stage_dir);
    const std::filesystem::path manifest_path = root_ / kManifestName;
    if (std::filesystem::exists(manifest_path))
        manifest_ = parse_manifest(read_file(manifest_path), manifest_path);
}

void Store::put(const std::string& relative_path, std::string_view bytes, const std::string& stage,
                const std::string& produced_by) {
    const std::string digest = sha256_hex(bytes);
    const std::filesystem::path target = root_ / relative_path;

    const auto it = manifest_.find(relative_path);
    const bool unchanged = it != manifest_.end() && it->second.sha256 == digest &&
                           std::filesystem::exists(target) && read_file(target) == bytes;
    if (!unchanged)
        write_atomic(target, bytes);

    ManifestEntry entry;
    entry.sha256 = digest;
    entry.stage = stage;
    entry.produced_by = produced_by;
    // Unchanged content keeps its original timestamp: idempotence is
    // judged on bytes, not clocks.
    entry.timestamp = (it != manifest_.end() && it->second.sha256 == digest) ? it->second.timestamp : clock_();
    manifest_[relative_path] = std::move(entry);
}

bool Store::has(const std::string& relative_path) const {
    return manifest_.count(relative_path) > 0 && std::filesystem::exists(root_ / relative_path);
}

std::string Store::read(const std::string& relative_path) const {
    return read_file(root_ / relative_path);
}

std::vector<std::string> Store::stage_paths(const std::string& stage) const {
    std::vector<std::string> out;
    for (const auto& [path, entry] : manifest_)
        if (entry.stage == stage)
            out.push_back(path);
    return out;
}

void Store::save_manifest() const {
    write_atomic(root_ / kManifestName, serialize_manifest(manifest_));
}

VerifyReport verify_store(const std::filesystem::path& root) {
    const std::filesystem::path manifest_path = root / kManifestName;
    if (!std::filesystem::exists(manifest_path))
        throw ManifestMissing("no manifest at '" + manifest_path.string() + "'");
    const std::map<std::string, ManifestEntry> entries = parse_manifest(read_file(manifest_path), manifest_path);

    VerifyReport report;
    for (const auto& [path, entry] : entries) {
        const std::filesystem::path target = root / path;
        if (!std::filesystem::exists(target)) {
            report.missing.push_back(path);
            continue;
        }
        if (sha256_hex(read_file(target)) != entry.sha256)
            report.modified.push_back(path);
    }
    return report;
}

StoreLock::StoreLock(const std::filesystem::path& root) {
    std::filesystem::create_directories(root);
    const std::filesystem::path lock_path = root / ".lock";
    fd_ = ::open(lock_path.c_str(), O_CREAT | O_RDWR | O_CLOEXEC, 0644);
    if (fd_ < 0)
        throw Error("E_STORE_IO", "cannot open lock file '" + lock_path.string() + "'");
    if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
        ::close(fd_);
        fd_ = -1;
        throw StoreLocked("store '" + root.string() + "' is in use by another invocation");
    }
}

StoreLock::~StoreLock() {
    if (fd_ >= 0) {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
}

}  // namespace folio::store
