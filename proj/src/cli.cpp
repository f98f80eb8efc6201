// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#include "folio/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "folio/config.hpp"
#include "folio/error.hpp"
#include "folio/http.hpp"
#include "folio/pipeline.hpp"
#include "folio/query.hpp"
#include "folio/recon.hpp"
#include "folio/store.hpp"

namespace folio::cli {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("E_CLI_IO", "cannot open file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string score6(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

// Store handle holding the advisory lock for the whole command; the lock
// member precedes the store so it is acquired first and released last.
struct OpenStore {
    explicit OpenStore(const std::filesystem::path& dir) : lock_(ensure(dir)), store_(dir) {}

    store::Store& store() { return store_; }

private:
    static const std::filesystem::path& ensure(const std::filesystem::path& dir) {
        std::filesystem::create_directories(dir);
        return dir;
    }

    store::StoreLock lock_;
    store::Store store_;
};

void print_reconcile(std::ostream& out, const char* kind, const recon::ReconcileResult& result) {
    std::set<std::string> review_labels;
    for (const recon::ReconCandidate& candidate : result.candidates)
        review_labels.insert(candidate.query);
    out << kind << " linked=" << result.links.size() << " review=" << review_labels.size()
        << " skipped=" << result.skipped.size() << "\n";
    for (const auto& [label, iri] : result.links)
        out << "link\t" << label << "\t" << iri << "\n";
    for (const recon::ReconCandidate& candidate : result.candidates)
        out << "candidate\t" << candidate.query << "\t" << candidate.external_iri << "\t" << score6(candidate.score)
            << "\t" << candidate.external_label << "\n";
    for (const auto& [label, reason] : result.skipped)
        out << "skip\t" << label << "\t" << reason << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Manuscript pipeline: harvest metadata, ingest page detections, derive indicators, build and query a "
                 "knowledge graph"};
    app.name("folio");
    app.require_subcommand(1);

    std::string store_dir = "store";
    std::string config_path;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out,--store", store_dir, "store directory")->capture_default_str();
        sub->add_option("--config", config_path, "JSON config file");
    };

    struct {
        std::string endpoint;
        std::string prefix = "oai_dc";
        std::string set;
        std::string from;
        std::string until;
        std::string fixture_dir;
    } harvest_opts;
    CLI::App* cmd_harvest = app.add_subcommand("harvest", "fetch records from an OAI-PMH endpoint into the store");
    cmd_harvest->add_option("--endpoint", harvest_opts.endpoint, "OAI-PMH base URL");
    cmd_harvest->add_option("--prefix", harvest_opts.prefix, "metadataPrefix to request")->capture_default_str();
    cmd_harvest->add_option("--set", harvest_opts.set, "setSpec to harvest");
    cmd_harvest->add_option("--from", harvest_opts.from, "earliest datestamp");
    cmd_harvest->add_option("--until", harvest_opts.until, "latest datestamp");
    cmd_harvest->add_option("--fixture-dir", harvest_opts.fixture_dir,
                            "answer requests from a fixture directory instead of the network");
    add_common(cmd_harvest);

    std::string ingest_file;
    CLI::App* cmd_ingest = app.add_subcommand("ingest-detections", "validate and store a page-detections document");
    cmd_ingest->add_option("file", ingest_file, "detections JSON file")->required();
    add_common(cmd_ingest);

    CLI::App* cmd_enrich = app.add_subcommand("enrich", "derive layout and condition indicators for harvested records");
    add_common(cmd_enrich);

    CLI::App* cmd_build = app.add_subcommand("build-kg", "build one knowledge graph per enriched record");
    add_common(cmd_build);

    std::string recon_fixture;
    std::string recon_endpoint;
    CLI::App* cmd_recon = app.add_subcommand("reconcile", "link creator and subject labels to an external registry");
    cmd_recon->add_option("--fixture", recon_fixture, "offline registry fixture (JSON file)");
    cmd_recon->add_option("--endpoint", recon_endpoint, "registry search endpoint");
    add_common(cmd_recon);

    std::string query_text;
    std::string query_file;
    CLI::App* cmd_query = app.add_subcommand("query", "evaluate a basic graph pattern over the stored graphs");
    cmd_query->add_option("--query", query_text, "query text");
    cmd_query->add_option("--query-file", query_file, "file containing the query");
    add_common(cmd_query);

    CLI::App* cmd_stats = app.add_subcommand("stats", "report store contents and verify file digests");
    add_common(cmd_stats);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 2;
    }

    try {
        config::Config config;
        if (!config_path.empty())
            config = config::load_config(config_path);

        if (app.got_subcommand(cmd_harvest)) {
            pipeline::HarvestParams params;
            params.endpoint = harvest_opts.endpoint.empty() ? config.oai_endpoint : harvest_opts.endpoint;
            if (params.endpoint.empty())
                throw config::ConfigError("no OAI-PMH endpoint given (--endpoint or config endpoints.oai)");
            params.metadata_prefix = harvest_opts.prefix;
            params.set = harvest_opts.set;
            params.from = harvest_opts.from;
            params.until = harvest_opts.until;

            std::unique_ptr<http::Transport> transport;
            if (!harvest_opts.fixture_dir.empty())
                transport = std::make_unique<http::FixtureTransport>(harvest_opts.fixture_dir);
            else
                transport = std::make_unique<http::LiveTransport>();

            OpenStore open(store_dir);
            const pipeline::HarvestOutcome outcome = pipeline::run_harvest(open.store(), *transport, params);
            out << "pages fetched: " << outcome.summary.pages_fetched << "\n";
            out << "records received: " << outcome.summary.records_received << "\n";
            out << "records deleted: " << outcome.summary.records_deleted << "\n";
            out << "records written: " << outcome.records_written + outcome.tombstones_written << "\n";
            if (!outcome.summary.completed) {
                err << "harvest incomplete: " << outcome.summary.failure << "\n";
                return 1;
            }
            return 0;
        }

        if (app.got_subcommand(cmd_ingest)) {
            OpenStore open(store_dir);
            const pipeline::IngestOutcome outcome = pipeline::run_ingest(open.store(), read_file(ingest_file), config);
            out << "ingested " << outcome.manuscript_id << ": " << outcome.pages << " pages, kept "
                << outcome.regions_kept << " of " << outcome.regions_in << " regions\n";
            return 0;
        }

        if (app.got_subcommand(cmd_enrich)) {
            OpenStore open(store_dir);
            const pipeline::EnrichOutcome outcome = pipeline::run_enrich(open.store(), config);
            for (const std::string& path : outcome.unmatched_detections)
                err << "warning: no harvested record matches " << path << "\n";
            out << "enriched " << outcome.records_enriched << " records (" << outcome.with_detections
                << " with detections, " << outcome.tombstones_skipped << " deleted skipped)\n";
            return 0;
        }

        if (app.got_subcommand(cmd_build)) {
            OpenStore open(store_dir);
            const pipeline::BuildOutcome outcome = pipeline::run_build_kg(open.store());
            out << "built " << outcome.graphs_written << " graphs (" << outcome.triples_total << " triples)\n";
            return 0;
        }

        if (app.got_subcommand(cmd_recon)) {
            std::unique_ptr<recon::SearchClient> client;
            std::unique_ptr<http::LiveTransport> transport;
            if (!recon_fixture.empty()) {
                client = std::make_unique<recon::FixtureSearchClient>(recon::FixtureSearchClient::from_file(recon_fixture));
            } else {
                const std::string endpoint = recon_endpoint.empty() ? config.search_endpoint : recon_endpoint;
                if (endpoint.empty())
                    throw config::ConfigError("no registry endpoint given (--fixture, --endpoint or config endpoints.search)");
                transport = std::make_unique<http::LiveTransport>();
                recon::LiveSearchClient::Options options;
                options.requests_per_second = config.search_per_second;
                client = std::make_unique<recon::LiveSearchClient>(endpoint, *transport, options);
            }

            OpenStore open(store_dir);
            const pipeline::ReconcileOutcome outcome = pipeline::run_reconcile(open.store(), *client, config);
            print_reconcile(out, "creators", outcome.creators);
            print_reconcile(out, "subjects", outcome.subjects);
            out << "link files written: " << outcome.files_written << "\n";
            return 0;
        }

        if (app.got_subcommand(cmd_query)) {
            if (query_text.empty() == query_file.empty()) {
                err << "query: provide exactly one of --query or --query-file\n";
                return 2;
            }
            const std::string text = query_text.empty() ? read_file(query_file) : query_text;
            OpenStore open(store_dir);
            out << query::to_tsv(pipeline::run_query(open.store(), text));
            return 0;
        }

        if (app.got_subcommand(cmd_stats)) {
            OpenStore open(store_dir);
            const pipeline::StatsReport report = pipeline::run_stats(open.store());
            for (const char* stage : {"raw", "record", "detections", "enriched", "graph", "links"}) {
                const auto it = report.stage_counts.find(stage);
                out << stage << ": " << (it == report.stage_counts.end() ? 0 : it->second) << "\n";
            }
            for (const std::string& path : report.verify.missing)
                err << "missing: " << path << "\n";
            for (const std::string& path : report.verify.modified)
                err << "modified: " << path << "\n";
            out << "verify: " << (report.verify.clean() ? "clean" : "dirty") << "\n";
            return report.verify.clean() ? 0 : 1;
        }
    } catch (const folio::Error& e) {
        err << e.code() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace folio::cli
