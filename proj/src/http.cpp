// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/http.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "folio/text.hpp"

namespace folio::http {

namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw TransportError("cannot read fixture file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string query_of(const std::string& url) {
    const std::size_t pos = url.find('?');
    return pos == std::string::npos ? std::string() : url.substr(pos + 1);
}

}  // namespace

std::optional<std::string> Response::header(const std::string& lowercase_name) const {
    const auto it = headers.find(lowercase_name);
    if (it == headers.end())
        return std::nullopt;
    return it->second;
}

struct FixtureTransport::Impl {
    std::filesystem::path directory;
    json manifest;
    std::map<std::string, std::size_t> call_counts;
};

FixtureTransport::FixtureTransport(std::filesystem::path directory) : impl_(std::make_unique<Impl>()) {
    impl_->directory = std::move(directory);
    const auto manifest_path = impl_->directory / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in)
        throw TransportError("fixture manifest not found: " + manifest_path.string());
    try {
        in >> impl_->manifest;
    } catch (const json::exception& e) {
        throw TransportError("fixture manifest unreadable: " + std::string(e.what()));
    }
}

FixtureTransport::~FixtureTransport() = default;

Response FixtureTransport::get(const std::string& url) {
    const std::string query = query_of(url);
    const auto it = impl_->manifest.find(query);
    if (it == impl_->manifest.end())
        throw TransportError("no fixture response for query '" + query + "'");

    json spec = *it;
    if (spec.is_array()) {
        if (spec.empty())
            throw TransportError("empty fixture sequence for query '" + query + "'");
        const std::size_t n = impl_->call_counts[query]++;
        spec = spec[std::min(n, spec.size() - 1)];
    }

    Response response;
    if (spec.is_string()) {
        response.status = 200;
        response.body = read_file(impl_->directory / spec.get<std::string>());
        return response;
    }
    response.status = spec.value("status", 200);
    if (spec.contains("file"))
        response.body = read_file(impl_->directory / spec["file"].get<std::string>());
    else if (spec.contains("body"))
        response.body = spec["body"].get<std::string>();
    if (spec.contains("headers"))
        for (const auto& [name, value] : spec["headers"].items())
            response.headers[text::to_lower_ascii(name)] = value.get<std::string>();
    return response;
}

LiveTransport::LiveTransport() : timeout_seconds_(30) {}

LiveTransport::LiveTransport(int timeout_seconds) : timeout_seconds_(timeout_seconds) {}

Response LiveTransport::get(const std::string& url) {
    const UrlParts parts = parse_url(url);
    const std::string origin =
        parts.scheme + "://" + parts.host + (parts.port != 0 ? ":" + std::to_string(parts.port) : "");
    httplib::Client client(origin);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    client.set_follow_location(false);

    auto result = client.Get(parts.path_and_query);
    if (!result)
        throw TransportError("request to " + url + " failed: " + httplib::to_string(result.error()));

    Response response;
    response.status = result->status;
    response.body = result->body;
    for (const auto& [name, value] : result->headers)
        response.headers[text::to_lower_ascii(name)] = value;
    return response;
}

UrlParts parse_url(const std::string& url) {
    UrlParts parts;
    std::size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
        throw TransportError("not an absolute URL: " + url);
    parts.scheme = text::to_lower_ascii(url.substr(0, scheme_end));
    if (parts.scheme != "http" && parts.scheme != "https")
        throw TransportError("unsupported URL scheme: " + url);

    const std::size_t host_start = scheme_end + 3;
    std::size_t host_end = url.find_first_of("/?", host_start);
    if (host_end == std::string::npos)
        host_end = url.size();
    std::string authority = url.substr(host_start, host_end - host_start);
    if (authority.empty())
        throw TransportError("URL has no host: " + url);
    const std::size_t colon = authority.rfind(':');
    if (colon != std::string::npos && colon + 1 < authority.size() &&
        authority.find_first_not_of("0123456789", colon + 1) == std::string::npos) {
        parts.port = std::stoi(authority.substr(colon + 1));
        authority.resize(colon);
    }
    parts.host = authority;
    parts.path_and_query = host_end < url.size() ? url.substr(host_end) : "/";
    if (parts.path_and_query[0] == '?')
        parts.path_and_query = "/" + parts.path_and_query;
    return parts;
}

}  // namespace folio::http
