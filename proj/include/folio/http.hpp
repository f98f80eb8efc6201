// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "folio/error.hpp"

namespace folio::http {

class TransportError : public Error {
public:
    explicit TransportError(const std::string& message) : Error("E_OAI_TRANSPORT", message) {}
};

struct Response {
    int status = 0;
    std::map<std::string, std::string> headers;  // header names lowercased
    std::string body;

    std::optional<std::string> header(const std::string& lowercase_name) const;
};

/// Minimal GET transport. Implementations throw TransportError when no
/// response could be obtained at all; HTTP-level failures come back as
/// status codes for the caller to interpret.
class Transport {
public:
    virtual ~Transport() = default;
    virtual Response get(const std::string& url) = 0;
};

/// Offline transport backed by a directory of canned responses. The
/// directory holds `manifest.json`, a map from canonical query string to
/// either a response file name or an ordered list of response objects
/// (`{"status": int, "file": str, "body": str, "headers": {..}}`) consumed
/// one per request; the last entry repeats once the list is exhausted.
class FixtureTransport : public Transport {
public:
    explicit FixtureTransport(std::filesystem::path directory);
    ~FixtureTransport() override;

    Response get(const std::string& url) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Plain cpp-httplib GET client. Redirects are left to the caller so that
/// scheme and depth policies stay in one place.
class LiveTransport : public Transport {
public:
    LiveTransport();
    explicit LiveTransport(int timeout_seconds);

    Response get(const std::string& url) override;

private:
    int timeout_seconds_;
};

struct UrlParts {
    std::string scheme;
    std::string host;
    int port = 0;  // 0 when not given
    std::string path_and_query;
};

/// Splits an absolute http/https URL. Throws TransportError on anything else.
UrlParts parse_url(const std::string& url);

}  // namespace folio::http
