#pragma once

#include "simseed/popsynth.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace simseed {

// A parsed dataset manifest: URL/destination templates plus the axes the
// placeholders iterate over. Real provider URLs live only in manifest
// files; code never hard-codes endpoints.
struct DatasetManifest {
    std::string id;
    std::string url_template;
    std::string dest_template;
    std::vector<std::string> genders;
    std::vector<BracketDef> brackets; // label plus year range (label:lo-hi)
    std::vector<std::string> variables;
    std::vector<std::string> months;
    std::map<std::string, std::string> checksums; // dest -> sha256 hex
    std::string auth_env;                         // empty = no auth needed
    std::map<std::string, std::string> defaults;  // e.g. country, year
    std::filesystem::path source_file;
};

DatasetManifest parse_manifest(const std::filesystem::path& path);

// Replaces every {name} placeholder with its value from the map; an
// unbound or unterminated placeholder throws.
std::string bind_template(const std::string& tmpl,
                          const std::map<std::string, std::string>& values);

struct FileTask {
    std::string url;
    std::string dest; // relative name inside cache/<id>/
    std::optional<std::string> sha256;
};

// Expands the templates over every axis combination; bindings fill scalar
// placeholders like {country} (command-line --set overrides manifest
// defaults). Destination names must come out unique.
std::vector<FileTask> enumerate_files(const DatasetManifest& manifest,
                                      const std::map<std::string, std::string>& bindings);

enum class FileStatus { Downloaded, Cached, Resumed, Failed };
const char* to_string(FileStatus s);

struct FileReport {
    std::string dest;
    FileStatus status = FileStatus::Failed;
    std::uintmax_t bytes = 0;
    bool checksum_checked = false;
    bool checksum_ok = false;
    double elapsed_s = 0.0;
    std::string error; // never contains secret material
};

struct FetchReport {
    std::vector<FileReport> files; // one per task, in enumeration order
    std::vector<std::string> warnings;

    bool all_ok() const;
};

struct FetchOptions {
    int attempts = 3;
    int initial_backoff_ms = 1000; // doubles per retry
    int concurrency = 4;
    int timeout_s = 30;
};

// Ensures every manifest file is present and verified under
// cache_dir/<id>/. Valid cached files cost no network transfer;
// interrupted transfers resume with Range requests; files that fail their
// checksum after the final attempt are quarantined as <name>.bad. Auth
// tokens come from the environment variable the manifest names and are
// sent as a bearer header, never logged.
FetchReport fetch(const DatasetManifest& manifest,
                  const std::map<std::string, std::string>& bindings,
                  const std::filesystem::path& cache_dir, const FetchOptions& options = {});

struct FixtureSet {
    std::string id;
    std::filesystem::path dir;
    std::filesystem::path manifest_file;
    std::vector<std::filesystem::path> files; // sorted, manifest excluded
};

// Repo-shipped synthetic datasets so everything runs with no network.
// Throws on an unknown id, listing what is available.
FixtureSet offline_fixture(const std::string& id, const std::filesystem::path& fixtures_root);

// Hex SHA-256 of a file's contents.
std::string sha256_file(const std::filesystem::path& path);

} // namespace simseed
