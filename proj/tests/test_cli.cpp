// Copyright 2026 The Folio Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "folio/cli.hpp"
#include "folio/store.hpp"
#include "support/corpus.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int exit_code = 0;
    std::string out;
    std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    Run run;
    run.exit_code = folio::cli::run(args, out, err);
    run.out = out.str();
    run.err = err.str();
    return run;
}

struct TempDir {
    fs::path path;

    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("folio_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    std::string file(const std::string& name, const std::string& bytes) const {
        const fs::path target = path / name;
        std::ofstream(target, std::ios::binary) << bytes;
        return target.string();
    }
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::size_t count_lines(const std::string& text, const std::string& needle) {
    std::size_t count = 0;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line))
        if (line.find(needle) != std::string::npos)
            ++count;
    return count;
}

}  // namespace

TEST_CASE("usage errors exit 2 with help on stderr") {
    const Run none = run_cli({});
    CHECK(none.exit_code == 2);
    CHECK(none.err.find("Usage") != std::string::npos);

    const Run unknown = run_cli({"frobnicate"});
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.err.find("subcommand") != std::string::npos);
    CHECK(unknown.err.find("Usage") != std::string::npos);

    const Run help = run_cli({"--help"});
    CHECK(help.exit_code == 0);
    for (const char* name : {"harvest", "ingest-detections", "enrich", "build-kg", "reconcile", "query", "stats"})
        CHECK(help.out.find(name) != std::string::npos);

    TempDir dir;
    const std::string store = (dir.path / "store").string();
    const Run both = run_cli({"query", "--query", "?s ?p ?o .", "--query-file", "x", "--store", store});
    CHECK(both.exit_code == 2);
    const Run neither = run_cli({"query", "--store", store});
    CHECK(neither.exit_code == 2);
    CHECK(neither.err.find("--query") != std::string::npos);
}

TEST_CASE("harvest requires an endpoint from flag or config") {
    TempDir dir;
    const Run run = run_cli({"harvest", "--store", (dir.path / "store").string()});
    CHECK(run.exit_code == 1);
    CHECK(run.err.find("E_CONFIG") != std::string::npos);
    CHECK(run.err.find("endpoint") != std::string::npos);
}

TEST_CASE("stage ordering is enforced with typed codes") {
    TempDir dir;
    const std::string store = (dir.path / "store").string();

    const Run enrich = run_cli({"enrich", "--store", store});
    CHECK(enrich.exit_code == 1);
    CHECK(enrich.err.find("E_SCHEMA_MISSING_DETECTIONS") != std::string::npos);

    const Run build = run_cli({"build-kg", "--store", store});
    CHECK(build.exit_code == 1);
    CHECK(build.err.find("E_STORE_MISSING_ENRICHED") != std::string::npos);

    const Run query = run_cli({"query", "--query", "?s ?p ?o .", "--store", store});
    CHECK(query.exit_code == 1);
    CHECK(query.err.find("E_STORE_MISSING_GRAPH") != std::string::npos);

    const Run recon = run_cli({"reconcile", "--fixture", dir.file("reg.json", "{}"), "--store", store});
    CHECK(recon.exit_code == 1);
    CHECK(recon.err.find("E_STORE_MISSING_RECORDS") != std::string::npos);

    // A store that has never saved a manifest fails verification loudly.
    const Run stats = run_cli({"stats", "--store", (dir.path / "fresh").string()});
    CHECK(stats.exit_code == 1);
    CHECK(stats.err.find("E_STORE_NO_MANIFEST") != std::string::npos);
}

TEST_CASE("the full pipeline runs end to end against the fixtures") {
    TempDir dir;
    const std::string store_dir = (dir.path / "store").string();
    const fs::path fixture_dir = dir.path / "fixture";
    corpus::write_happy_fixture(fixture_dir);

    // Harvest.
    const Run harvest = run_cli({"harvest", "--endpoint", corpus::kEndpoint, "--fixture-dir",
                                 fixture_dir.string(), "--store", store_dir});
    CAPTURE(harvest.err);
    CHECK(harvest.exit_code == 0);
    CHECK(harvest.out.find("pages fetched: 3\n") != std::string::npos);
    CHECK(harvest.out.find("records received: 150\n") != std::string::npos);
    CHECK(harvest.out.find("records deleted: 1\n") != std::string::npos);
    CHECK(harvest.out.find("records written: 150\n") != std::string::npos);
    CHECK(fs::exists(fs::path(store_dir) / "raw/page-0001.xml"));
    CHECK(fs::exists(fs::path(store_dir) / "records/oai%3Ajbc%3A00001.json"));
    CHECK(fs::exists(fs::path(store_dir) / "records/oai%3Ajbc%3A00042.json"));

    // The deleted record leaves a tombstone, not descriptive fields.
    const std::string tombstone = slurp(fs::path(store_dir) / "records/oai%3Ajbc%3A00042.json");
    CHECK(tombstone.find("\"deleted\": true") != std::string::npos);

    // Re-harvesting identical content leaves every byte alone.
    const std::string manifest_before = slurp(fs::path(store_dir) / "manifest.json");
    const std::string record_before = slurp(fs::path(store_dir) / "records/oai%3Ajbc%3A00007.json");
    const Run again = run_cli({"harvest", "--endpoint", corpus::kEndpoint, "--fixture-dir",
                               fixture_dir.string(), "--store", store_dir});
    CHECK(again.exit_code == 0);
    CHECK(slurp(fs::path(store_dir) / "manifest.json") == manifest_before);
    CHECK(slurp(fs::path(store_dir) / "records/oai%3Ajbc%3A00007.json") == record_before);

    // Ingest every corpus detections document.
    for (const int n : corpus::detections_manuscripts()) {
        const std::string file = dir.file("det.json", corpus::detections_json(n));
        const Run ingest = run_cli({"ingest-detections", file, "--store", store_dir});
        CAPTURE(n);
        CAPTURE(ingest.err);
        CHECK(ingest.exit_code == 0);
    }
    const Run ingest1 =
        run_cli({"ingest-detections", dir.file("det.json", corpus::detections_json(1)), "--store", store_dir});
    CHECK(ingest1.out == "ingested oai:jbc:00001: 1 pages, kept 6 of 6 regions\n");

    // Enrich: the deleted manuscript's detections match nothing.
    const Run enrich = run_cli({"enrich", "--store", store_dir});
    CHECK(enrich.exit_code == 0);
    CHECK(enrich.out == "enriched 149 records (10 with detections, 1 deleted skipped)\n");
    CHECK(enrich.err ==
          "warning: no harvested record matches detections/oai%3Ajbc%3A00042.json\n");

    // Build the graphs.
    const Run build = run_cli({"build-kg", "--store", store_dir});
    CHECK(build.exit_code == 0);
    CHECK(build.out.find("built 149 graphs (") != std::string::npos);
    CHECK(fs::exists(fs::path(store_dir) / "graph/oai%3Ajbc%3A00001.nt"));
    CHECK(fs::exists(fs::path(store_dir) / "graph/oai%3Ajbc%3A00001.ttl"));

    // Query: manuscripts with a stamped page. Manuscript 150 carries two
    // stamps, so six rows cover five manuscripts.
    const Run query = run_cli({"query", "--query",
                               "?m jdlo:hasPage ?p . ?p jdlo:hasRegion ?r . ?r a jdlo:Stamp .", "--store",
                               store_dir});
    CHECK(query.exit_code == 0);
    std::istringstream rows(query.out);
    std::string line;
    std::getline(rows, line);
    CHECK(line == "?m\t?p\t?r");
    std::vector<std::string> manuscripts;
    while (std::getline(rows, line))
        manuscripts.push_back(line.substr(0, line.find('\t')));
    const std::string base = "<https://example.org/jdl/resource/ms/oai%3Ajbc%3A";
    CHECK(manuscripts == std::vector<std::string>{
                             base + "00001>", base + "00007>", base + "00013>", base + "00099>",
                             base + "00150>", base + "00150>"});

    // The same query from a file gives identical output.
    const Run from_file = run_cli({"query", "--query-file",
                                   dir.file("q.rq", "?m jdlo:hasPage ?p . ?p jdlo:hasRegion ?r . ?r a jdlo:Stamp ."),
                                   "--store", store_dir});
    CHECK(from_file.out == query.out);

    // Reconcile against the offline registry.
    const std::string registry = dir.file("registry.json", corpus::recon_registry_json());
    const Run recon = run_cli({"reconcile", "--fixture", registry, "--store", store_dir});
    CAPTURE(recon.err);
    CHECK(recon.exit_code == 0);
    CHECK(recon.out.find("creators linked=11 review=0 skipped=0\n") != std::string::npos);
    CHECK(recon.out.find("subjects linked=8 review=0 skipped=0\n") != std::string::npos);
    CHECK(recon.out.find("link files written: 149\n") != std::string::npos);
    CHECK(count_lines(recon.out, "link\t") == 19);
    // The registry revision points the Wrobel entry at Q300.
    CHECK(recon.out.find("link\tKazimierz Wr\xC3\xB3"
                         "bel\thttps://registry.example/entity/Q300\n") != std::string::npos);
    // Rejected labels appear nowhere in the output.
    CHECK(recon.out.find("Ewa Lisowska") == std::string::npos);
    CHECK(recon.out.find("grammar") == std::string::npos);

    // One link graph spot check: manuscript 1 links its creator and both
    // subjects.
    const std::string links1 = slurp(fs::path(store_dir) / "links/oai%3Ajbc%3A00001.nt");
    CHECK(links1 ==
          "<https://example.org/jdl/resource/agent/Zofia%20Gajewska> "
          "<http://www.w3.org/2002/07/owl#sameAs> "
          "<https://registry.example/entity/Q101> .\n"
          "<https://example.org/jdl/resource/concept/liturgy> "
          "<http://www.w3.org/2002/07/owl#sameAs> "
          "<https://registry.example/entity/Q201> .\n"
          "<https://example.org/jdl/resource/concept/medicine> "
          "<http://www.w3.org/2002/07/owl#sameAs> "
          "<https://registry.example/entity/Q204> .\n");

    // Stats: stage counts and a clean verification.
    const Run stats = run_cli({"stats", "--store", store_dir});
    CHECK(stats.exit_code == 0);
    CHECK(stats.out ==
          "raw: 3\n"
          "record: 150\n"
          "detections: 11\n"
          "enriched: 149\n"
          "graph: 298\n"
          "links: 149\n"
          "verify: clean\n");

    // Tampering turns stats dirty and nonzero.
    {
        std::ofstream out(fs::path(store_dir) / "graph/oai%3Ajbc%3A00001.nt", std::ios::app);
        out << "tampered\n";
    }
    const Run dirty = run_cli({"stats", "--store", store_dir});
    CHECK(dirty.exit_code == 1);
    CHECK(dirty.out.find("verify: dirty") != std::string::npos);
    CHECK(dirty.err.find("modified: graph/oai%3Ajbc%3A00001.nt") != std::string::npos);
}

TEST_CASE("an interrupted harvest reports the failure and keeps partial pages") {
    TempDir dir;
    const std::string store_dir = (dir.path / "store").string();
    const fs::path fixture_dir = dir.path / "fixture";
    corpus::write_expiry_fixture(fixture_dir);

    const Run harvest = run_cli({"harvest", "--endpoint", corpus::kEndpoint, "--fixture-dir",
                                 fixture_dir.string(), "--store", store_dir});
    CHECK(harvest.exit_code == 1);
    CHECK(harvest.err.find("harvest incomplete:") != std::string::npos);
    CHECK(harvest.err.find("expired") != std::string::npos);
    CHECK(harvest.out.find("records received: 50\n") != std::string::npos);
    CHECK(fs::exists(fs::path(store_dir) / "records/oai%3Ajbc%3A00001.json"));
}

TEST_CASE("config file thresholds steer ingestion") {
    TempDir dir;
    const std::string store_dir = (dir.path / "store").string();

    // Manuscript 150 carries two overlapping stamps; a dedupe threshold
    // below their overlap suppresses the weaker one.
    const std::string strict = dir.file("strict.json", R"({"thresholds": {"dedupe_iou": 0.5}})");
    const std::string file150 = dir.file("det150.json", corpus::detections_json(150));
    const Run deduped = run_cli({"ingest-detections", file150, "--config", strict, "--store", store_dir});
    CHECK(deduped.exit_code == 0);
    CHECK(deduped.out == "ingested oai:jbc:00150: 1 pages, kept 4 of 5 regions\n");

    // Manuscript 50 has one low-confidence ornament.
    const std::string floor = dir.file("floor.json", R"({"thresholds": {"min_confidence": 0.5}})");
    const std::string file50 = dir.file("det50.json", corpus::detections_json(50));
    const Run filtered = run_cli({"ingest-detections", file50, "--config", floor, "--store", store_dir});
    CHECK(filtered.exit_code == 0);
    CHECK(filtered.out == "ingested oai:jbc:00050: 3 pages, kept 9 of 10 regions\n");

    // A malformed config is a typed failure.
    const Run bad = run_cli({"ingest-detections", file50, "--config",
                             dir.file("bad.json", R"({"treshold": {}})"), "--store", store_dir});
    CHECK(bad.exit_code == 1);
    CHECK(bad.err.find("E_CONFIG") != std::string::npos);
    CHECK(bad.err.find("treshold") != std::string::npos);
}

TEST_CASE("invalid inputs surface their schema codes") {
    TempDir dir;
    const std::string store_dir = (dir.path / "store").string();

    const Run bad_json = run_cli({"ingest-detections", dir.file("x.json", "not json"), "--store", store_dir});
    CHECK(bad_json.exit_code == 1);
    CHECK(bad_json.err.find("E_SCHEMA_VALIDATION") != std::string::npos);

    const Run bad_version = run_cli(
        {"ingest-detections",
         dir.file("v.json", R"({"schema_version": "2.0", "manuscript_id": "m", "pages": []})"),
         "--store", store_dir});
    CHECK(bad_version.exit_code == 1);
    CHECK(bad_version.err.find("E_SCHEMA_VERSION") != std::string::npos);

    const Run missing_file = run_cli({"ingest-detections", (dir.path / "absent.json").string(), "--store", store_dir});
    CHECK(missing_file.exit_code == 1);
    CHECK(missing_file.err.find("E_CLI_IO") != std::string::npos);

    const Run bad_query = run_cli({"query", "--query", "?s ?p", "--store", store_dir});
    CHECK(bad_query.exit_code == 1);
    // Query text is parsed before the graph stage is consulted.
    CHECK((bad_query.err.find("E_QUERY_SYNTAX") != std::string::npos ||
           bad_query.err.find("E_STORE_MISSING_GRAPH") != std::string::npos));
}
