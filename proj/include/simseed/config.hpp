#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace simseed {

// Flat key-value configuration, the format shared by job files and dataset
// manifests:
//
//   # comment
//   id = climate-fixture
//   variables = tair q net_sw net_lw wind aet
//   checksum.elevation.csv = 9f2a...
//
// One `key = value` pair per line. Keys may contain dots; values run to the
// end of the line. Lists are whitespace- or comma-separated. Repeated keys
// are an error.
class Config {
public:
    static Config parse(std::istream& in, const std::string& origin = "<stream>");
    static Config parse_file(const std::filesystem::path& path);

    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string_or(const std::string& key, const std::string& fallback) const;
    long long get_int(const std::string& key) const;
    double get_double(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::vector<std::string> get_list(const std::string& key) const;

    std::optional<std::string> find(const std::string& key) const;

    // All keys beginning with `prefix`, in file order.
    std::vector<std::string> keys_with_prefix(const std::string& prefix) const;

    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> values_;
    std::vector<std::string> order_;
    std::string origin_;
};

// Splits on commas and/or whitespace, dropping empty tokens.
std::vector<std::string> split_list(const std::string& text);

} // namespace simseed
