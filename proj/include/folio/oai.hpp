// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folio/error.hpp"
#include "folio/http.hpp"

namespace folio::oai {

inline constexpr char kOaiNamespace[] = "http://www.openarchives.org/OAI/2.0/";

enum class Verb {
    kIdentify,
    kListMetadataFormats,
    kListSets,
    kListIdentifiers,
    kListRecords,
    kGetRecord,
};

const char* to_string(Verb verb);

/// One harvested record. metadata_xml holds the raw bytes of the
/// <metadata> subtree sliced from the response, empty for deleted records.
struct Record {
    std::string identifier;
    std::string datestamp;
    std::vector<std::string> set_specs;
    std::string metadata_xml;
    bool deleted = false;
};

enum class ProtocolErrorCode {
    kBadArgument,
    kBadResumptionToken,
    kBadVerb,
    kCannotDisseminateFormat,
    kIdDoesNotExist,
    kNoRecordsMatch,
    kNoMetadataFormats,
    kNoSetHierarchy,
};

const char* to_string(ProtocolErrorCode code);

class ProtocolError : public Error {
public:
    ProtocolError(ProtocolErrorCode code, const std::string& message)
        : Error("E_OAI_PROTOCOL", std::string(to_string(code)) + ": " + message), protocol_code_(code) {}

    ProtocolErrorCode protocol_code() const noexcept { return protocol_code_; }

private:
    ProtocolErrorCode protocol_code_;
};

class IllegalArgumentCombination : public Error {
public:
    explicit IllegalArgumentCombination(const std::string& message) : Error("E_OAI_BAD_ARGS", message) {}
};

class MissingArgument : public Error {
public:
    explicit MissingArgument(const std::string& message) : Error("E_OAI_MISSING_ARG", message) {}
};

class VerbMismatch : public Error {
public:
    explicit VerbMismatch(const std::string& message) : Error("E_OAI_VERB_MISMATCH", message) {}
};

class TransportExhausted : public Error {
public:
    explicit TransportExhausted(const std::string& message) : Error("E_OAI_TRANSPORT_EXHAUSTED", message) {}
};

struct ResumptionToken {
    std::string value;  // empty string means "final page"
    std::optional<long> complete_list_size;
    std::optional<long> cursor;
};

struct SetInfo {
    std::string spec;
    std::string name;
};

struct IdentifyInfo {
    std::string repository_name;
    std::string base_url;
    std::string protocol_version;
    std::string earliest_datestamp;
    std::string granularity;
    std::vector<std::string> admin_emails;
};

struct Response {
    Verb verb = Verb::kIdentify;
    std::vector<Record> records;
    std::vector<SetInfo> sets;
    std::optional<IdentifyInfo> identify;
    std::optional<ResumptionToken> resumption_token;
};

/// Builds the GET URL for a verb: `verb` first, remaining arguments sorted
/// by key, values percent-encoded per RFC 3986. The fixed ordering keeps
/// request logs and fixture manifests reproducible.
std::string build_request(const std::string& endpoint, Verb verb, const std::map<std::string, std::string>& args);

/// Parses an OAI-PMH envelope. Protocol <error> elements are thrown as
/// ProtocolError; a payload for a different verb throws VerbMismatch.
Response parse_response(std::string_view xml, Verb expected_verb);

/// True for YYYY-MM-DD or YYYY-MM-DDThh:mm:ssZ.
bool is_valid_datestamp(std::string_view value);

struct HarvestSummary {
    std::size_t records_received = 0;
    std::size_t records_deleted = 0;
    std::size_t pages_fetched = 0;
    std::vector<std::string> resumption_tokens_seen;
    bool completed = false;
    std::string failure;  // set when completed is false
};

using RecordSink = std::function<void(const Record&)>;
using Sleeper = std::function<void(std::chrono::milliseconds)>;
using PageObserver = std::function<void(std::size_t page_number, const std::string& body)>;

struct HarvestOptions {
    std::string metadata_prefix = "oai_dc";
    std::optional<std::string> set;
    std::optional<std::string> from;
    std::optional<std::string> until;
    unsigned max_retries = 5;
    std::chrono::milliseconds backoff_base{1000};
    std::chrono::seconds retry_after_cap{60};
    unsigned max_redirects = 5;
    Sleeper sleeper;             // defaults to a real sleep
    PageObserver page_observer;  // called with each successfully parsed page
};

/// Issues ListRecords and follows resumption tokens until a response
/// carries none (or an empty one), forwarding every record to the sink
/// exactly once. 503 responses are retried after the advertised
/// Retry-After (capped), transport failures with exponential backoff.
/// An expired token ends the harvest with completed=false rather than
/// restarting, so the sink never sees a record twice.
HarvestSummary harvest(const std::string& endpoint, http::Transport& transport, const HarvestOptions& options,
                       const RecordSink& sink);

}  // namespace folio::oai
