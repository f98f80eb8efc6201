// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/oai.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

#include "folio/text.hpp"
#include "folio/xml.hpp"

namespace folio::oai {

namespace {

const std::map<std::string, ProtocolErrorCode> kErrorCodes = {
    {"badArgument", ProtocolErrorCode::kBadArgument},
    {"badResumptionToken", ProtocolErrorCode::kBadResumptionToken},
    {"badVerb", ProtocolErrorCode::kBadVerb},
    {"cannotDisseminateFormat", ProtocolErrorCode::kCannotDisseminateFormat},
    {"idDoesNotExist", ProtocolErrorCode::kIdDoesNotExist},
    {"noRecordsMatch", ProtocolErrorCode::kNoRecordsMatch},
    {"noMetadataFormats", ProtocolErrorCode::kNoMetadataFormats},
    {"noSetHierarchy", ProtocolErrorCode::kNoSetHierarchy},
};

struct VerbSpec {
    Verb verb;
    std::vector<std::string> allowed;
    std::vector<std::string> required;  // alternative to resumptionToken for list verbs
};

// Argument sets per verb, following the protocol tables.
const VerbSpec& verb_spec(Verb verb) {
    static const std::vector<VerbSpec> specs = {
        {Verb::kIdentify, {}, {}},
        {Verb::kListMetadataFormats, {"identifier"}, {}},
        {Verb::kListSets, {"resumptionToken"}, {}},
        {Verb::kListIdentifiers, {"metadataPrefix", "from", "until", "set", "resumptionToken"}, {"metadataPrefix"}},
        {Verb::kListRecords, {"metadataPrefix", "from", "until", "set", "resumptionToken"}, {"metadataPrefix"}},
        {Verb::kGetRecord, {"identifier", "metadataPrefix"}, {"identifier", "metadataPrefix"}},
    };
    return specs[static_cast<std::size_t>(verb)];
}

bool parses_as_long(const std::string& s, long& out) {
    if (s.empty())
        return false;
    char* end = nullptr;
    const long value = std::strtol(s.c_str(), &end, 10);
    if (end != s.c_str() + s.size())
        return false;
    out = value;
    return true;
}

Record parse_record_header(const xml::Element& header) {
    Record record;
    if (const std::string* status = header.attribute("status"))
        record.deleted = (*status == "deleted");
    for (const xml::Element* child : header.child_elements()) {
        if (child->local == "identifier")
            record.identifier = std::string(text::trim(child->text()));
        else if (child->local == "datestamp")
            record.datestamp = std::string(text::trim(child->text()));
        else if (child->local == "setSpec")
            record.set_specs.push_back(std::string(text::trim(child->text())));
    }
    if (record.identifier.empty())
        throw xml::MalformedError("record header lacks an identifier", header.begin);
    if (!is_valid_datestamp(record.datestamp))
        throw xml::MalformedError("record datestamp '" + record.datestamp + "' is not ISO 8601", header.begin);
    return record;
}

Record parse_record(const xml::Element& record_el, std::string_view source) {
    const xml::Element* header = record_el.first_child(kOaiNamespace, "header");
    if (header == nullptr)
        throw xml::MalformedError("record lacks a header", record_el.begin);
    Record record = parse_record_header(*header);
    if (const xml::Element* metadata = record_el.first_child(kOaiNamespace, "metadata")) {
        if (record.deleted)
            throw xml::MalformedError("deleted record carries metadata", metadata->begin);
        record.metadata_xml = std::string(source.substr(metadata->begin, metadata->end - metadata->begin));
    } else if (!record.deleted) {
        throw xml::MalformedError("record lacks metadata", record_el.begin);
    }
    return record;
}

ResumptionToken parse_token(const xml::Element& el) {
    ResumptionToken token;
    token.value = std::string(text::trim(el.text()));
    long value = 0;
    if (const std::string* s = el.attribute("completeListSize"); s != nullptr && parses_as_long(*s, value))
        token.complete_list_size = value;
    if (const std::string* s = el.attribute("cursor"); s != nullptr && parses_as_long(*s, value))
        token.cursor = value;
    return token;
}

IdentifyInfo parse_identify(const xml::Element& el) {
    IdentifyInfo info;
    for (const xml::Element* child : el.child_elements()) {
        if (child->local == "repositoryName")
            info.repository_name = std::string(text::trim(child->text()));
        else if (child->local == "baseURL")
            info.base_url = std::string(text::trim(child->text()));
        else if (child->local == "protocolVersion")
            info.protocol_version = std::string(text::trim(child->text()));
        else if (child->local == "earliestDatestamp")
            info.earliest_datestamp = std::string(text::trim(child->text()));
        else if (child->local == "granularity")
            info.granularity = std::string(text::trim(child->text()));
        else if (child->local == "adminEmail")
            info.admin_emails.push_back(std::string(text::trim(child->text())));
    }
    return info;
}

bool all_digits(std::string_view s) {
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
}

std::chrono::milliseconds retry_after_delay(const http::Response& response, std::chrono::seconds cap) {
    std::chrono::seconds delay{1};
    if (const auto value = response.header("retry-after")) {
        const auto trimmed = text::trim(*value);
        if (all_digits(trimmed))
            delay = std::chrono::seconds(std::strtol(std::string(trimmed).c_str(), nullptr, 10));
    }
    return std::min<std::chrono::milliseconds>(delay, cap);
}

// Resolves a Location header against the current URL; only absolute URLs
// and path-absolute references are accepted.
std::string resolve_redirect(const std::string& current, const std::string& location) {
    if (location.rfind("http://", 0) == 0 || location.rfind("https://", 0) == 0)
        return location;
    if (!location.empty() && location[0] == '/') {
        const http::UrlParts parts = http::parse_url(current);
        return parts.scheme + "://" + parts.host + (parts.port != 0 ? ":" + std::to_string(parts.port) : "") + location;
    }
    throw http::TransportError("unsupported redirect target: " + location);
}

// GET with the harvest retry policy: Retry-After on 503, exponential
// backoff on transport failures and 5xx, same-scheme redirects up to the
// configured depth.
std::string fetch_page(http::Transport& transport, std::string url, const HarvestOptions& options,
                       const Sleeper& sleep) {
    unsigned failures = 0;
    unsigned redirects = 0;
    const std::string scheme = http::parse_url(url).scheme;
    for (;;) {
        bool transport_failed = false;
        std::string failure_reason;
        http::Response response;
        try {
            response = transport.get(url);
        } catch (const http::TransportError& e) {
            transport_failed = true;
            failure_reason = e.what();
        }

        if (!transport_failed) {
            if (response.status == 200)
                return response.body;
            if (response.status == 301 || response.status == 302 || response.status == 303 ||
                response.status == 307 || response.status == 308) {
                const auto location = response.header("location");
                if (!location)
                    throw http::TransportError("redirect without Location from " + url);
                const std::string target = resolve_redirect(url, *location);
                if (http::parse_url(target).scheme != scheme)
                    throw http::TransportError("redirect changes scheme: " + target);
                if (++redirects > options.max_redirects)
                    throw http::TransportError("too many redirects from " + url);
                url = target;
                continue;
            }
            if (response.status == 503) {
                if (++failures > options.max_retries)
                    throw TransportExhausted("gave up after " + std::to_string(options.max_retries) +
                                             " retries on 503 from " + url);
                sleep(retry_after_delay(response, options.retry_after_cap));
                continue;
            }
            failure_reason = "HTTP " + std::to_string(response.status) + " from " + url;
        }

        if (++failures > options.max_retries)
            throw TransportExhausted("gave up after " + std::to_string(options.max_retries) +
                                     " retries: " + failure_reason);
        sleep(options.backoff_base * (1u << (failures - 1)));
    }
}

// Day-granularity endpoints only accept YYYY-MM-DD selective arguments.
std::string clamp_to_granularity(const std::string& stamp, const std::string& granularity) {
    if (granularity != "YYYY-MM-DDThh:mm:ssZ" && stamp.size() > 10)
        return stamp.substr(0, 10);
    return stamp;
}

bool datestamp_not_after(const std::string& from, const std::string& until) {
    return from.substr(0, 10) <= until.substr(0, 10) || from <= until;
}

}  // namespace

const char* to_string(Verb verb) {
    switch (verb) {
    case Verb::kIdentify:
        return "Identify";
    case Verb::kListMetadataFormats:
        return "ListMetadataFormats";
    case Verb::kListSets:
        return "ListSets";
    case Verb::kListIdentifiers:
        return "ListIdentifiers";
    case Verb::kListRecords:
        return "ListRecords";
    case Verb::kGetRecord:
        return "GetRecord";
    }
    return "";
}

const char* to_string(ProtocolErrorCode code) {
    for (const auto& [name, value] : kErrorCodes)
        if (value == code)
            return name.c_str();
    return "";
}

bool is_valid_datestamp(std::string_view value) {
    const auto digits_at = [&](std::initializer_list<std::size_t> positions) {
        for (std::size_t i : positions)
            if (value[i] < '0' || value[i] > '9')
                return false;
        return true;
    };
    const auto number = [&](std::size_t offset, std::size_t width) {
        int n = 0;
        for (std::size_t i = 0; i < width; ++i)
            n = n * 10 + (value[offset + i] - '0');
        return n;
    };
    const auto date_ok = [&] {
        const int year = number(0, 4);
        const int month = number(5, 2);
        const int day = number(8, 2);
        if (month < 1 || month > 12 || day < 1)
            return false;
        static const int days_in[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
        int limit = days_in[month - 1];
        const bool leap = year % 4 == 0 && (year % 100 != 0 || year % 400 == 0);
        if (month == 2 && leap)
            limit = 29;
        return day <= limit;
    };
    if (value.size() == 10)
        return digits_at({0, 1, 2, 3, 5, 6, 8, 9}) && value[4] == '-' && value[7] == '-' && date_ok();
    if (value.size() == 20)
        return digits_at({0, 1, 2, 3, 5, 6, 8, 9, 11, 12, 14, 15, 17, 18}) && value[4] == '-' && value[7] == '-' &&
               value[10] == 'T' && value[13] == ':' && value[16] == ':' && value[19] == 'Z' && date_ok() &&
               number(11, 2) < 24 && number(14, 2) < 60 && number(17, 2) < 60;
    return false;
}

std::string build_request(const std::string& endpoint, Verb verb, const std::map<std::string, std::string>& args) {
    const VerbSpec& spec = verb_spec(verb);
    for (const auto& [key, value] : args) {
        if (std::find(spec.allowed.begin(), spec.allowed.end(), key) == spec.allowed.end())
            throw IllegalArgumentCombination("argument '" + key + "' is not allowed for " + to_string(verb));
        (void)value;
    }
    const bool has_token = args.count("resumptionToken") > 0;
    if (has_token) {
        for (const char* exclusive : {"from", "until", "set", "metadataPrefix"})
            if (args.count(exclusive) > 0)
                throw IllegalArgumentCombination(std::string("resumptionToken is exclusive with '") + exclusive + "'");
    } else {
        for (const std::string& required : spec.required)
            if (args.count(required) == 0)
                throw MissingArgument(std::string(to_string(verb)) + " requires '" + required + "'");
    }

    std::string url = endpoint;
    url += url.find('?') == std::string::npos ? '?' : '&';
    url += "verb=";
    url += to_string(verb);
    for (const auto& [key, value] : args) {  // std::map iterates keys sorted
        url += '&';
        url += key;
        url += '=';
        url += text::percent_encode(value);
    }
    return url;
}

Response parse_response(std::string_view xml_bytes, Verb expected_verb) {
    const xml::Document doc = xml::parse(xml_bytes);
    const xml::Element& root = *doc.root;
    if (root.local != "OAI-PMH" || (!root.ns_uri.empty() && root.ns_uri != kOaiNamespace))
        throw xml::MalformedError("not an OAI-PMH envelope", root.begin);

    if (const xml::Element* error = root.first_child(kOaiNamespace, "error")) {
        const std::string* code = error->attribute("code");
        if (code == nullptr)
            throw xml::MalformedError("protocol error without code attribute", error->begin);
        const auto it = kErrorCodes.find(*code);
        if (it == kErrorCodes.end())
            throw xml::MalformedError("unknown protocol error code '" + *code + "'", error->begin);
        throw ProtocolError(it->second, std::string(text::trim(error->text())));
    }

    const xml::Element* payload = nullptr;
    for (const xml::Element* child : root.child_elements()) {
        if (child->local == "responseDate" || child->local == "request")
            continue;
        payload = child;
        break;
    }
    if (payload == nullptr)
        throw xml::MalformedError("envelope carries neither payload nor error", root.begin);
    if (payload->local != to_string(expected_verb))
        throw VerbMismatch("expected " + std::string(to_string(expected_verb)) + " payload, found " + payload->local);

    Response response;
    response.verb = expected_verb;
    switch (expected_verb) {
    case Verb::kListRecords:
    case Verb::kGetRecord:
        for (const xml::Element* record : payload->children_named(kOaiNamespace, "record"))
            response.records.push_back(parse_record(*record, xml_bytes));
        break;
    case Verb::kListIdentifiers:
        for (const xml::Element* header : payload->children_named(kOaiNamespace, "header"))
            response.records.push_back(parse_record_header(*header));
        break;
    case Verb::kListSets:
        for (const xml::Element* set : payload->children_named(kOaiNamespace, "set")) {
            SetInfo info;
            if (const xml::Element* spec = set->first_child(kOaiNamespace, "setSpec"))
                info.spec = std::string(text::trim(spec->text()));
            if (const xml::Element* name = set->first_child(kOaiNamespace, "setName"))
                info.name = std::string(text::trim(name->text()));
            response.sets.push_back(std::move(info));
        }
        break;
    case Verb::kIdentify:
        response.identify = parse_identify(*payload);
        break;
    case Verb::kListMetadataFormats:
        break;
    }
    if (const xml::Element* token = payload->first_child(kOaiNamespace, "resumptionToken"))
        response.resumption_token = parse_token(*token);
    return response;
}

HarvestSummary harvest(const std::string& endpoint, http::Transport& transport, const HarvestOptions& options,
                       const RecordSink& sink) {
    if (options.from && options.until && !datestamp_not_after(*options.from, *options.until))
        throw IllegalArgumentCombination("from '" + *options.from + "' is after until '" + *options.until + "'");

    const Sleeper sleep =
        options.sleeper ? options.sleeper : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };

    // Selective harvests phrase from/until at the endpoint's granularity,
    // learned from Identify; endpoints that will not identify get day stamps.
    std::string granularity = "YYYY-MM-DD";
    if (options.from || options.until) {
        try {
            const std::string url = build_request(endpoint, Verb::kIdentify, {});
            const Response identify = parse_response(fetch_page(transport, url, options, sleep), Verb::kIdentify);
            if (identify.identify && !identify.identify->granularity.empty())
                granularity = identify.identify->granularity;
        } catch (const Error&) {
        }
    }

    HarvestSummary summary;
    std::optional<std::string> token;
    for (;;) {
        std::map<std::string, std::string> args;
        if (token) {
            args["resumptionToken"] = *token;
        } else {
            args["metadataPrefix"] = options.metadata_prefix;
            if (options.set)
                args["set"] = *options.set;
            if (options.from)
                args["from"] = clamp_to_granularity(*options.from, granularity);
            if (options.until)
                args["until"] = clamp_to_granularity(*options.until, granularity);
        }
        const std::string url = build_request(endpoint, Verb::kListRecords, args);

        Response page;
        try {
            const std::string body = fetch_page(transport, url, options, sleep);
            page = parse_response(body, Verb::kListRecords);
            if (options.page_observer)
                options.page_observer(summary.pages_fetched + 1, body);
        } catch (const ProtocolError& e) {
            if (e.protocol_code() == ProtocolErrorCode::kNoRecordsMatch && !token) {
                summary.completed = true;
                return summary;
            }
            if (e.protocol_code() == ProtocolErrorCode::kBadResumptionToken && token) {
                summary.completed = false;
                summary.failure = std::string("resumption token expired: ") + e.what();
                return summary;
            }
            throw;
        }

        ++summary.pages_fetched;
        for (const Record& record : page.records) {
            ++summary.records_received;
            if (record.deleted)
                ++summary.records_deleted;
            sink(record);
        }

        if (!page.resumption_token || page.resumption_token->value.empty()) {
            summary.completed = true;
            return summary;
        }
        token = page.resumption_token->value;
        summary.resumption_tokens_seen.push_back(*token);
    }
}

}  // namespace folio::oai
