#include "simseed/fetch.hpp"

#include "simseed/config.hpp"
#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"

#include <httplib.h>

#include <openssl/evp.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <thread>

namespace simseed {
namespace {

namespace fs = std::filesystem;

std::vector<BracketDef> parse_brackets(const std::string& raw, const fs::path& file) {
    std::vector<BracketDef> out;
    for (const std::string& item : split_list(raw)) {
        // label:lo-hi, e.g. "65-plus:65-99"
        const std::size_t colon = item.find(':');
        const std::size_t dash = item.find('-', colon + 1);
        if (colon == std::string::npos || dash == std::string::npos)
            throw ParseError(file.string() + ": bracket '" + item + "' is not label:lo-hi");
        BracketDef def;
        def.label = item.substr(0, colon);
        def.year_lo = static_cast<int>(parse_int(item.substr(colon + 1, dash - colon - 1)));
        def.year_hi = static_cast<int>(parse_int(item.substr(dash + 1)));
        if (def.label.empty() || def.year_hi < def.year_lo)
            throw ParseError(file.string() + ": bracket '" + item + "' has an empty range");
        out.push_back(std::move(def));
    }
    return out;
}

// Replaces every {placeholder} with its value; unresolvable names throw.
std::string expand_template(const std::string& tmpl,
                            const std::map<std::string, std::string>& values,
                            const std::string& what) {
    std::string out;
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        const std::size_t open = tmpl.find('{', pos);
        if (open == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        out.append(tmpl, pos, open - pos);
        const std::size_t close = tmpl.find('}', open);
        if (close == std::string::npos)
            throw ValidationError(what + ": unterminated placeholder in '" + tmpl + "'");
        const std::string name = tmpl.substr(open + 1, close - open - 1);
        const auto it = values.find(name);
        if (it == values.end())
            throw ValidationError(what + ": placeholder '{" + name + "}' has no binding");
        out += it->second;
        pos = close + 1;
    }
    return out;
}

bool uses_placeholder(const std::string& tmpl, const std::string& name) {
    return tmpl.find("{" + name + "}") != std::string::npos;
}

void check_dest(const std::string& dest) {
    if (dest.empty() || dest.front() == '/' || dest.find("..") != std::string::npos ||
        dest.find('\\') != std::string::npos)
        throw ValidationError("unsafe destination name '" + dest + "'");
}

struct UrlParts {
    std::string base; // scheme://host[:port]
    std::string path; // /path?query
};

UrlParts split_url(const std::string& url) {
    const std::size_t scheme = url.find("://");
    if (scheme == std::string::npos)
        throw ValidationError("URL '" + url + "' has no scheme");
    const std::size_t slash = url.find('/', scheme + 3);
    if (slash == std::string::npos) return {url, "/"};
    return {url.substr(0, slash), url.substr(slash)};
}

std::string sha256_hex(const unsigned char* digest, unsigned len) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

// One file: cache check, bounded retries with resume, checksum, quarantine.
FileReport fetch_one(const FileTask& task, const fs::path& dir, const std::string& token,
                     const FetchOptions& opt) {
    const auto start = std::chrono::steady_clock::now();
    FileReport rep;
    rep.dest = task.dest;
    auto finish = [&](FileStatus status) {
        rep.status = status;
        rep.elapsed_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    };

    const fs::path target = dir / task.dest;
    const fs::path part = dir / (task.dest + ".part");
    const fs::path bad = dir / (task.dest + ".bad");
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);

    auto verify = [&](const fs::path& p) -> bool {
        if (!task.sha256) return true;
        rep.checksum_checked = true;
        rep.checksum_ok = sha256_file(p) == *task.sha256;
        return rep.checksum_ok;
    };

    if (fs::exists(target)) {
        if (verify(target)) {
            rep.bytes = fs::file_size(target);
            return finish(FileStatus::Cached);
        }
        // A corrupt cached file: quarantine it and fall through to a fresh
        // download.
        fs::remove(bad, ec);
        fs::rename(target, bad, ec);
        if (ec) {
            rep.error = "cannot quarantine corrupt cache entry: " + ec.message();
            return finish(FileStatus::Failed);
        }
    }

    const UrlParts url = split_url(task.url);
    bool resumed = false;
    std::string last_error;

    for (int attempt = 1; attempt <= opt.attempts; ++attempt) {
        if (attempt > 1) {
            const auto delay =
                std::chrono::milliseconds(opt.initial_backoff_ms) * (1 << (attempt - 2));
            std::this_thread::sleep_for(delay);
        }

        httplib::Client client(url.base);
        client.set_connection_timeout(opt.timeout_s, 0);
        client.set_read_timeout(opt.timeout_s, 0);

        std::uintmax_t offset = fs::exists(part) ? fs::file_size(part) : 0;
        httplib::Headers headers;
        if (!token.empty()) headers.emplace("Authorization", "Bearer " + token);
        if (offset > 0) headers.emplace("Range", "bytes=" + std::to_string(offset) + "-");

        std::ofstream out;
        bool using_range = false;
        int http_status = 0;
        auto result = client.Get(
            url.path, headers,
            [&](const httplib::Response& response) {
                http_status = response.status;
                if (response.status == 206 && offset > 0) {
                    using_range = true;
                    out.open(part, std::ios::binary | std::ios::app);
                } else if (response.status == 200) {
                    // Full body (server ignored the range or fresh start).
                    out.open(part, std::ios::binary | std::ios::trunc);
                } else {
                    return false;
                }
                return out.good();
            },
            [&](const char* data, std::size_t len) {
                out.write(data, static_cast<std::streamsize>(len));
                return out.good();
            });
        out.close();

        if (!result || (http_status != 200 && http_status != 206)) {
            if (http_status != 0 && http_status != 200 && http_status != 206) {
                last_error = "HTTP " + std::to_string(http_status);
                fs::remove(part, ec); // an error body is not resumable data
            } else {
                last_error = "transfer interrupted";
            }
            continue;
        }
        if (using_range) resumed = true;

        fs::remove(target, ec);
        ec.clear();
        fs::rename(part, target, ec);
        if (ec) {
            last_error = "cannot move download into place: " + ec.message();
            continue;
        }

        if (verify(target)) {
            rep.bytes = fs::file_size(target);
            rep.error.clear();
            return finish(resumed ? FileStatus::Resumed : FileStatus::Downloaded);
        }
        // Checksum mismatch: drop the bytes and retry from scratch; after
        // the final attempt, quarantine.
        last_error = "checksum mismatch";
        if (attempt == opt.attempts) {
            fs::remove(bad, ec);
            fs::rename(target, bad, ec);
        } else {
            fs::remove(target, ec);
        }
        resumed = false;
    }

    rep.error = last_error.empty() ? "download failed" : last_error;
    return finish(FileStatus::Failed);
}

} // namespace

DatasetManifest parse_manifest(const std::filesystem::path& path) {
    const Config cfg = Config::parse_file(path);
    DatasetManifest m;
    m.source_file = path;
    m.id = cfg.get_string("id");
    m.url_template = cfg.get_string_or("url", "");
    m.dest_template = cfg.get_string("dest");
    if (m.id.empty() || m.dest_template.empty())
        throw ParseError(path.string() + ": manifest needs non-empty id and dest");

    static const std::set<std::string> kKnown = {"id",       "url",    "dest",
                                                 "genders",  "brackets", "variables",
                                                 "months",   "auth_env"};
    for (const std::string& key : cfg.keys_with_prefix("")) {
        if (kKnown.count(key)) continue;
        if (key.rfind("checksum.", 0) == 0) {
            m.checksums[key.substr(9)] = cfg.get_string(key);
            continue;
        }
        m.defaults[key] = cfg.get_string(key);
    }
    if (cfg.has("genders")) m.genders = cfg.get_list("genders");
    if (cfg.has("brackets")) m.brackets = parse_brackets(cfg.get_string("brackets"), path);
    if (cfg.has("variables")) m.variables = cfg.get_list("variables");
    if (cfg.has("months")) m.months = cfg.get_list("months");
    if (cfg.has("auth_env")) m.auth_env = cfg.get_string("auth_env");
    return m;
}

std::vector<FileTask> enumerate_files(const DatasetManifest& manifest,
                                      const std::map<std::string, std::string>& bindings) {
    std::map<std::string, std::string> values = manifest.defaults;
    for (const auto& [k, v] : bindings) values[k] = v;

    // Axes iterate only when the template mentions them; a scalar binding
    // can still override a single-valued axis.
    struct Axis {
        std::string name;
        std::vector<std::string> items;
    };
    std::vector<Axis> axes;
    auto add_axis = [&](const std::string& name, std::vector<std::string> items) {
        const bool used = uses_placeholder(manifest.dest_template, name) ||
                          uses_placeholder(manifest.url_template, name);
        if (!used) return;
        if (values.count(name)) {
            axes.push_back({name, {values.at(name)}});
            return;
        }
        if (items.empty())
            throw ValidationError(manifest.source_file.string() + ": placeholder '{" + name +
                                  "}' has no axis values");
        axes.push_back({name, std::move(items)});
    };
    add_axis("gender", manifest.genders);
    {
        std::vector<std::string> labels;
        for (const auto& b : manifest.brackets) labels.push_back(b.label);
        add_axis("bracket", std::move(labels));
    }
    add_axis("variable", manifest.variables);
    add_axis("month", manifest.months);

    std::vector<FileTask> tasks;
    std::set<std::string> seen;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        std::map<std::string, std::string> bound = values;
        for (std::size_t a = 0; a < axes.size(); ++a) bound[axes[a].name] = axes[a].items[idx[a]];
        FileTask task;
        task.dest = expand_template(manifest.dest_template, bound, manifest.id);
        check_dest(task.dest);
        task.url = expand_template(manifest.url_template, bound, manifest.id);
        const auto sum = manifest.checksums.find(task.dest);
        if (sum != manifest.checksums.end()) task.sha256 = sum->second;
        if (!seen.insert(task.dest).second)
            throw ValidationError(manifest.source_file.string() +
                                  ": destination names are not unique ('" + task.dest + "')");
        tasks.push_back(std::move(task));

        // Odometer increment over the axes; done when it wraps.
        std::size_t a = axes.size();
        while (a > 0) {
            --a;
            if (++idx[a] < axes[a].items.size()) break;
            idx[a] = 0;
            if (a == 0) return tasks;
        }
        if (axes.empty()) return tasks;
    }
}

std::string bind_template(const std::string& tmpl,
                          const std::map<std::string, std::string>& values) {
    return expand_template(tmpl, values, "template");
}

const char* to_string(FileStatus s) {
    switch (s) {
        case FileStatus::Downloaded: return "downloaded";
        case FileStatus::Cached: return "cached";
        case FileStatus::Resumed: return "resumed";
        case FileStatus::Failed: return "failed";
    }
    return "unknown";
}

bool FetchReport::all_ok() const {
    return std::all_of(files.begin(), files.end(), [](const FileReport& f) {
        return f.status != FileStatus::Failed;
    });
}

FetchReport fetch(const DatasetManifest& manifest,
                  const std::map<std::string, std::string>& bindings,
                  const std::filesystem::path& cache_dir, const FetchOptions& options) {
    if (manifest.url_template.empty())
        throw ValidationError(manifest.source_file.string() + ": manifest has no url template");
    const std::vector<FileTask> tasks = enumerate_files(manifest, bindings);

    std::string token;
    if (!manifest.auth_env.empty()) {
        const char* value = std::getenv(manifest.auth_env.c_str());
        if (value == nullptr || *value == '\0')
            throw ValidationError("auth token environment variable '" + manifest.auth_env +
                                  "' is not set");
        token = value;
    }

    FetchReport report;
    if (manifest.checksums.empty())
        report.warnings.push_back("manifest '" + manifest.id +
                                  "' carries no checksums; provenance unverified");

    const fs::path dir = cache_dir / manifest.id;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create cache directory " + dir.string() + ": " + ec.message());

    report.files.resize(tasks.size());
    std::atomic<std::size_t> next{0};
    const int workers = std::max(1, std::min<int>(options.concurrency,
                                                  static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                report.files[i] = fetch_one(tasks[i], dir, token, options);
            }
        });
    }
    for (auto& t : pool) t.join();
    return report;
}

FixtureSet offline_fixture(const std::string& id, const std::filesystem::path& fixtures_root) {
    const fs::path dir = fixtures_root / id;
    if (!fs::is_directory(dir) || !fs::exists(dir / "manifest.conf")) {
        std::string available;
        if (fs::is_directory(fixtures_root)) {
            std::vector<std::string> ids;
            for (const auto& entry : fs::directory_iterator(fixtures_root))
                if (entry.is_directory() && fs::exists(entry.path() / "manifest.conf"))
                    ids.push_back(entry.path().filename().string());
            std::sort(ids.begin(), ids.end());
            for (const auto& fid : ids) {
                if (!available.empty()) available += ", ";
                available += fid;
            }
        }
        throw ValidationError("unknown fixture '" + id + "' (available: " +
                              (available.empty() ? "none" : available) + ")");
    }
    FixtureSet set;
    set.id = id;
    set.dir = dir;
    set.manifest_file = dir / "manifest.conf";
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path() == set.manifest_file) continue;
        set.files.push_back(entry.path());
    }
    std::sort(set.files.begin(), set.files.end());
    return set;
}

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr) throw InternalError("EVP_MD_CTX_new failed");
    if (EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw InternalError("EVP_DigestInit_ex failed");
    }
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        const std::streamsize got = in.gcount();
        if (got > 0 && EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(got)) != 1) {
            EVP_MD_CTX_free(ctx);
            throw InternalError("EVP_DigestUpdate failed");
        }
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
        EVP_MD_CTX_free(ctx);
        throw InternalError("EVP_DigestFinal_ex failed");
    }
    EVP_MD_CTX_free(ctx);
    return sha256_hex(digest, len);
}

} // namespace simseed
