#include <doctest.h>

#include "simseed/error.hpp"
#include "simseed/fetch.hpp"

#include "../support/testutil.hpp"

#include <httplib.h>

#include <atomic>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

using namespace simseed;
namespace fs = std::filesystem;

namespace {

// Loopback HTTP server backed by an in-memory file map. Range requests are
// honored (sliced 206 responses), so interrupted-download resume is
// exercised against real HTTP semantics.
struct TestServer {
    httplib::Server svr;
    int port = 0;
    std::thread thread;
    std::map<std::string, std::string> files;
    std::atomic<int> hits{0};
    std::mutex mu;
    std::vector<std::string> auth_seen;

    TestServer() {
        svr.Get(R"(/files/(.*))", [this](const httplib::Request& req, httplib::Response& res) {
            hits.fetch_add(1);
            {
                std::lock_guard<std::mutex> lock(mu);
                auth_seen.push_back(req.get_header_value("Authorization"));
            }
            const auto it = files.find(req.matches[1]);
            if (it == files.end()) {
                res.status = 404;
                return;
            }
            res.set_content(it->second, "application/octet-stream");
        });
        port = svr.bind_to_any_port("127.0.0.1");
        REQUIRE(port > 0);
        thread = std::thread([this] { svr.listen_after_bind(); });
        svr.wait_until_ready();
    }
    ~TestServer() {
        svr.stop();
        thread.join();
    }
    TestServer(const TestServer&) = delete;
    TestServer& operator=(const TestServer&) = delete;

    std::string url_base() const {
        return "http://127.0.0.1:" + std::to_string(port) + "/files/";
    }
    std::vector<std::string> auth_headers() {
        std::lock_guard<std::mutex> lock(mu);
        return auth_seen;
    }
};

DatasetManifest simple_manifest(const TestServer& server, const std::string& name) {
    DatasetManifest m;
    m.id = "ds";
    m.url_template = server.url_base() + name;
    m.dest_template = name;
    m.source_file = "ds.conf";
    return m;
}

FetchOptions fast_options() {
    FetchOptions opt;
    opt.attempts = 3;
    opt.initial_backoff_ms = 1;
    return opt;
}

std::string sha_of(const std::string& content) {
    testutil::TempDir tmp("sha");
    testutil::write_file(tmp / "c.bin", content);
    return sha256_file(tmp / "c.bin");
}

std::string pattern_bytes(std::size_t n) {
    std::string out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        out.push_back(static_cast<char>('a' + (i * 31 + i / 97) % 26));
    return out;
}

} // namespace

TEST_CASE("manifest files parse into templates, axes, checksums and defaults") {
    testutil::TempDir tmp;
    testutil::write_file(
        tmp / "manifest.conf",
        "id = pop-fixture\n"
        "url = https://example.invalid/{gender}/{bracket}.asc\n"
        "dest = {gender}_{bracket}.asc\n"
        "genders = f m\n"
        "brackets = 0-4:0-4, 65-plus:65-99\n"
        "months = 2020-06 2020-07\n"
        "auth_env = POP_TOKEN\n"
        "country = FIX\n"
        "year = 2020\n"
        "checksum.f_0-4.asc = "
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad\n");

    const DatasetManifest m = parse_manifest(tmp / "manifest.conf");
    CHECK(m.id == "pop-fixture");
    CHECK(m.url_template == "https://example.invalid/{gender}/{bracket}.asc");
    CHECK(m.dest_template == "{gender}_{bracket}.asc");
    CHECK(m.genders == std::vector<std::string>{"f", "m"});
    REQUIRE(m.brackets.size() == 2);
    CHECK(m.brackets[0].label == "0-4");
    CHECK(m.brackets[0].year_lo == 0);
    CHECK(m.brackets[0].year_hi == 4);
    CHECK(m.brackets[1].label == "65-plus");
    CHECK(m.brackets[1].year_lo == 65);
    CHECK(m.brackets[1].year_hi == 99);
    CHECK(m.months == std::vector<std::string>{"2020-06", "2020-07"});
    CHECK(m.auth_env == "POP_TOKEN");
    CHECK(m.defaults.at("country") == "FIX");
    CHECK(m.defaults.at("year") == "2020");
    CHECK(m.checksums.at("f_0-4.asc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(m.source_file == tmp / "manifest.conf");

    // A URL is optional (offline fixture manifests have none).
    testutil::write_file(tmp / "offline.conf", "id = x\ndest = a.asc\n");
    CHECK(parse_manifest(tmp / "offline.conf").url_template.empty());

    testutil::write_file(tmp / "bad_bracket.conf",
                         "id = x\ndest = {bracket}.asc\nbrackets = 0-4\n");
    try {
        parse_manifest(tmp / "bad_bracket.conf");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("is not label:lo-hi") != std::string::npos);
    }

    testutil::write_file(tmp / "empty_range.conf",
                         "id = x\ndest = {bracket}.asc\nbrackets = 9-5:9-5\n");
    CHECK_THROWS_AS(parse_manifest(tmp / "empty_range.conf"), ParseError);

    testutil::write_file(tmp / "no_dest.conf", "id = x\n");
    CHECK_THROWS_AS(parse_manifest(tmp / "no_dest.conf"), ValidationError);
}

TEST_CASE("template binding reports unbound and unterminated placeholders") {
    CHECK(bind_template("{gender}_{bracket}.asc",
                        {{"gender", "f"}, {"bracket", "0-4"}}) == "f_0-4.asc");
    CHECK(bind_template("plain.asc", {}) == "plain.asc");
    CHECK_THROWS_WITH_AS(bind_template("{x}.asc", {}),
                         "template: placeholder '{x}' has no binding", ValidationError);
    CHECK_THROWS_WITH_AS(bind_template("{x.asc", {}),
                         "template: unterminated placeholder in '{x.asc'", ValidationError);
    CHECK_THROWS_AS(bind_template("{}.asc", {}), ValidationError);
}

TEST_CASE("file enumeration iterates only the axes the templates mention") {
    DatasetManifest m;
    m.id = "pop";
    m.source_file = "pop.conf";
    m.url_template = "https://example.invalid/{gender}/{bracket}";
    m.dest_template = "{gender}_{bracket}.asc";
    m.genders = {"f", "m"};
    m.brackets = {{"0-4", 0, 4}, {"5-9", 5, 9}};
    m.months = {"2020-01", "2020-02"}; // unused by the templates
    m.checksums["f_5-9.asc"] = "feed";

    const auto tasks = enumerate_files(m, {});
    REQUIRE(tasks.size() == 4);
    CHECK(tasks[0].dest == "f_0-4.asc");
    CHECK(tasks[1].dest == "f_5-9.asc");
    CHECK(tasks[2].dest == "m_0-4.asc");
    CHECK(tasks[3].dest == "m_5-9.asc");
    CHECK(tasks[0].url == "https://example.invalid/f/0-4");
    CHECK_FALSE(tasks[0].sha256.has_value());
    REQUIRE(tasks[1].sha256.has_value());
    CHECK(*tasks[1].sha256 == "feed");

    // A scalar binding pins an axis to one value.
    const auto pinned = enumerate_files(m, {{"gender", "m"}});
    REQUIRE(pinned.size() == 2);
    CHECK(pinned[0].dest == "m_0-4.asc");
    CHECK(pinned[1].dest == "m_5-9.asc");

    // Defaults fill plain scalar placeholders.
    DatasetManifest scalar = m;
    scalar.url_template = "https://example.invalid/{country}/{gender}";
    scalar.dest_template = "{country}_{gender}.asc";
    scalar.defaults["country"] = "FIX";
    const auto with_default = enumerate_files(scalar, {});
    CHECK(with_default[0].dest == "FIX_f.asc");
    // ... and command-line bindings override those defaults.
    const auto overridden = enumerate_files(scalar, {{"country", "ZZZ"}});
    CHECK(overridden[0].dest == "ZZZ_f.asc");

    // A used axis with no values is an error.
    DatasetManifest no_axis = m;
    no_axis.dest_template = "{month}_{gender}.asc";
    no_axis.months.clear();
    try {
        enumerate_files(no_axis, {});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("placeholder '{month}' has no axis values") !=
              std::string::npos);
    }

    // Destinations must come out unique.
    DatasetManifest dup = m;
    dup.dest_template = "{gender}.asc";
    dup.url_template = "https://example.invalid/{gender}/{bracket}";
    dup.genders = {"f", "f"};
    try {
        enumerate_files(dup, {});
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("destination names are not unique ('f.asc')") !=
              std::string::npos);
    }

    // Unbound scalar placeholders are reported with the manifest id.
    DatasetManifest unbound = m;
    unbound.dest_template = "{region}_{gender}.asc";
    CHECK_THROWS_WITH_AS(enumerate_files(unbound, {}),
                         "pop: placeholder '{region}' has no binding", ValidationError);

    // Escapes from the cache directory are rejected.
    for (const std::string tmpl : {"../{gender}.asc", "/etc/{gender}", "a\\{gender}"}) {
        DatasetManifest esc = m;
        esc.dest_template = tmpl;
        try {
            enumerate_files(esc, {});
            FAIL("expected ValidationError");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("unsafe destination name") != std::string::npos);
        }
    }
}

TEST_CASE("sha256 matches the published test vectors") {
    testutil::TempDir tmp;
    testutil::write_file(tmp / "abc.txt", "abc");
    CHECK(sha256_file(tmp / "abc.txt") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    testutil::write_file(tmp / "empty.txt", "");
    CHECK(sha256_file(tmp / "empty.txt") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK_THROWS_AS(sha256_file(tmp / "missing.txt"), IoError);
}

TEST_CASE("offline fixtures resolve by id and enumerate their files") {
    testutil::TempDir tmp;
    testutil::write_file(tmp / "fix-a" / "manifest.conf", "id = fix-a\ndest = a.asc\n");
    testutil::write_file(tmp / "fix-a" / "a.asc", "grid a");
    testutil::write_file(tmp / "fix-a" / "sub" / "b.asc", "grid b");
    testutil::write_file(tmp / "fix-b" / "manifest.conf", "id = fix-b\ndest = c.asc\n");
    testutil::write_file(tmp / "notafix" / "readme.txt", "not a fixture");

    const FixtureSet set = offline_fixture("fix-a", tmp.path);
    CHECK(set.id == "fix-a");
    CHECK(set.dir == tmp / "fix-a");
    CHECK(set.manifest_file == tmp / "fix-a" / "manifest.conf");
    REQUIRE(set.files.size() == 2);
    CHECK(set.files[0] == tmp / "fix-a" / "a.asc");
    CHECK(set.files[1] == tmp / "fix-a" / "sub" / "b.asc");

    CHECK_THROWS_WITH_AS(offline_fixture("zzz", tmp.path),
                         "unknown fixture 'zzz' (available: fix-a, fix-b)", ValidationError);

    testutil::TempDir empty;
    CHECK_THROWS_WITH_AS(offline_fixture("x", empty.path),
                         "unknown fixture 'x' (available: none)", ValidationError);
}

TEST_CASE("downloads verify, cache, resume and recover from corrupt entries") {
    TestServer server;
    const std::string content = pattern_bytes(10000);
    server.files["data.bin"] = content;

    testutil::TempDir tmp;
    const fs::path cache = tmp / "cache";
    DatasetManifest m = simple_manifest(server, "data.bin");
    m.checksums["data.bin"] = sha_of(content);

    // Fresh download.
    FetchReport r1 = fetch(m, {}, cache, fast_options());
    REQUIRE(r1.files.size() == 1);
    CHECK(r1.files[0].status == FileStatus::Downloaded);
    CHECK(r1.files[0].bytes == content.size());
    CHECK(r1.files[0].checksum_checked);
    CHECK(r1.files[0].checksum_ok);
    CHECK(r1.files[0].error.empty());
    CHECK(r1.all_ok());
    CHECK(testutil::read_file(cache / "ds" / "data.bin") == content);
    CHECK(server.hits.load() == 1);

    // Second run: verified cache, no request.
    FetchReport r2 = fetch(m, {}, cache, fast_options());
    CHECK(r2.files[0].status == FileStatus::Cached);
    CHECK(server.hits.load() == 1);

    // Interrupted download left a partial file: resumed with a range request.
    fs::remove(cache / "ds" / "data.bin");
    testutil::write_file(cache / "ds" / "data.bin.part", content.substr(0, 1000));
    FetchReport r3 = fetch(m, {}, cache, fast_options());
    CHECK(r3.files[0].status == FileStatus::Resumed);
    CHECK(r3.files[0].bytes == content.size());
    CHECK(testutil::read_file(cache / "ds" / "data.bin") == content);
    CHECK(server.hits.load() == 2);
    CHECK_FALSE(fs::exists(cache / "ds" / "data.bin.part"));

    // A stale partial longer than the source: the range is unsatisfiable, the
    // partial is dropped and the next attempt downloads from scratch.
    fs::remove(cache / "ds" / "data.bin");
    testutil::write_file(cache / "ds" / "data.bin.part", content + content);
    FetchReport r4 = fetch(m, {}, cache, fast_options());
    CHECK(r4.files[0].status == FileStatus::Downloaded);
    CHECK(testutil::read_file(cache / "ds" / "data.bin") == content);

    // A corrupt cached file is quarantined, then replaced by a fresh copy.
    testutil::write_file(cache / "ds" / "data.bin", "garbage");
    FetchReport r5 = fetch(m, {}, cache, fast_options());
    CHECK(r5.files[0].status == FileStatus::Downloaded);
    CHECK(testutil::read_file(cache / "ds" / "data.bin") == content);
    CHECK(testutil::read_file(cache / "ds" / "data.bin.bad") == "garbage");
}

TEST_CASE("auth tokens travel as bearer headers and never leak into reports") {
    TestServer server;
    server.files["a.bin"] = "payload";
    const std::string token = "sekrit-value-42";

    testutil::TempDir tmp;
    DatasetManifest m = simple_manifest(server, "a.bin");
    m.auth_env = "SIMSEED_TEST_TOKEN";

    ::setenv("SIMSEED_TEST_TOKEN", token.c_str(), 1);
    FetchReport ok = fetch(m, {}, tmp / "c1", fast_options());
    CHECK(ok.files[0].status == FileStatus::Downloaded);
    const auto seen = server.auth_headers();
    REQUIRE_FALSE(seen.empty());
    CHECK(seen[0] == "Bearer " + token);

    // Force a failure while the token is set: the report must not leak it.
    DatasetManifest missing = simple_manifest(server, "gone.bin");
    missing.auth_env = "SIMSEED_TEST_TOKEN";
    FetchReport bad = fetch(missing, {}, tmp / "c2", fast_options());
    CHECK(bad.files[0].status == FileStatus::Failed);
    CHECK(bad.files[0].error.find(token) == std::string::npos);
    for (const auto& w : bad.warnings) CHECK(w.find(token) == std::string::npos);

    ::unsetenv("SIMSEED_TEST_TOKEN");
    try {
        fetch(m, {}, tmp / "c3", fast_options());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        const std::string msg = e.what();
        CHECK(msg == "auth token environment variable 'SIMSEED_TEST_TOKEN' is not set");
        CHECK(msg.find(token) == std::string::npos);
    }
}

TEST_CASE("failures retry with backoff and quarantine checksum mismatches") {
    TestServer server;
    server.files["w.bin"] = "hello";

    testutil::TempDir tmp;
    DatasetManifest gone = simple_manifest(server, "gone.bin");
    FetchReport r404 = fetch(gone, {}, tmp / "cache", fast_options());
    CHECK(r404.files[0].status == FileStatus::Failed);
    CHECK(r404.files[0].error == "HTTP 404");
    CHECK_FALSE(r404.all_ok());
    CHECK(server.hits.load() == 3); // one request per attempt

    // Served bytes never match the manifest checksum: after the final
    // attempt the download is quarantined, not installed.
    DatasetManifest wrong = simple_manifest(server, "w.bin");
    wrong.checksums["w.bin"] = std::string(64, '0');
    FetchReport rsum = fetch(wrong, {}, tmp / "cache", fast_options());
    CHECK(rsum.files[0].status == FileStatus::Failed);
    CHECK(rsum.files[0].error == "checksum mismatch");
    CHECK_FALSE(fs::exists(tmp / "cache" / "ds" / "w.bin"));
    CHECK(testutil::read_file(tmp / "cache" / "ds" / "w.bin.bad") == "hello");
}

TEST_CASE("fetch requires a url template and warns when unverified") {
    TestServer server;
    server.files["a.bin"] = "payload";
    testutil::TempDir tmp;

    DatasetManifest offline;
    offline.id = "ds";
    offline.dest_template = "a.bin";
    offline.source_file = "ds.conf";
    try {
        fetch(offline, {}, tmp / "cache", fast_options());
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("manifest has no url template") != std::string::npos);
    }

    DatasetManifest unverified = simple_manifest(server, "a.bin");
    FetchReport r = fetch(unverified, {}, tmp / "cache", fast_options());
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0] == "manifest 'ds' carries no checksums; provenance unverified");
    CHECK(r.files[0].status == FileStatus::Downloaded);
    CHECK_FALSE(r.files[0].checksum_checked);
}

TEST_CASE("status names render for reports") {
    CHECK(std::string(to_string(FileStatus::Downloaded)) == "downloaded");
    CHECK(std::string(to_string(FileStatus::Cached)) == "cached");
    CHECK(std::string(to_string(FileStatus::Resumed)) == "resumed");
    CHECK(std::string(to_string(FileStatus::Failed)) == "failed");
}

TEST_CASE("concurrent fetches keep the report in enumeration order") {
    TestServer server;
    DatasetManifest m;
    m.id = "ds";
    m.source_file = "ds.conf";
    m.url_template = server.url_base() + "{month}.bin";
    m.dest_template = "{month}.bin";
    for (int i = 1; i <= 6; ++i) {
        const std::string name = "2020-0" + std::to_string(i);
        m.months.push_back(name);
        server.files[name + ".bin"] = "payload " + name;
    }

    testutil::TempDir tmp;
    FetchOptions opt = fast_options();
    opt.concurrency = 4;
    const FetchReport r = fetch(m, {}, tmp / "cache", opt);
    REQUIRE(r.files.size() == 6);
    for (int i = 0; i < 6; ++i) {
        const std::string name = "2020-0" + std::to_string(i + 1);
        CHECK(r.files[static_cast<std::size_t>(i)].dest == name + ".bin");
        CHECK(r.files[static_cast<std::size_t>(i)].status == FileStatus::Downloaded);
        CHECK(testutil::read_file(tmp / "cache" / "ds" / (name + ".bin")) ==
              "payload " + name);
    }
    CHECK(r.all_ok());
}
