#include "simseed/config.hpp"

#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace simseed {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) {
        --end;
    }
    return s.substr(begin, end - begin);
}

bool valid_key(const std::string& key) {
    if (key.empty()) {
        return false;
    }
    return std::all_of(key.begin(), key.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '.' || c == '_' || c == '-';
    });
}

} // namespace

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::string token;
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            if (!token.empty()) {
                out.push_back(token);
                token.clear();
            }
        } else {
            token += c;
        }
    }
    if (!token.empty()) {
        out.push_back(token);
    }
    return out;
}

Config Config::parse(std::istream& in, const std::string& origin) {
    Config cfg;
    cfg.origin_ = origin;
    std::string raw;
    long line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string text = trim(raw);
        if (text.empty() || text[0] == '#') {
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ParseError(origin + ": expected 'key = value'", line);
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (!valid_key(key)) {
            throw ParseError(origin + ": bad key '" + key + "'", line);
        }
        if (cfg.values_.count(key)) {
            throw ParseError(origin + ": repeated key '" + key + "'", line);
        }
        cfg.values_[key] = value;
        cfg.order_.push_back(key);
    }
    return cfg;
}

Config Config::parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open: " + path.string());
    }
    return parse(in, path.string());
}

bool Config::has(const std::string& key) const {
    return values_.count(key) != 0;
}

std::optional<std::string> Config::find(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string Config::get_string(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) {
        throw ValidationError(origin_ + ": missing key '" + key + "'");
    }
    return it->second;
}

std::string Config::get_string_or(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

long long Config::get_int(const std::string& key) const {
    try {
        return parse_int(get_string(key));
    } catch (const ParseError&) {
        throw ValidationError(origin_ + ": key '" + key + "' is not an integer");
    }
}

double Config::get_double(const std::string& key) const {
    try {
        return parse_double(get_string(key));
    } catch (const ParseError&) {
        throw ValidationError(origin_ + ": key '" + key + "' is not a number");
    }
}

bool Config::get_bool(const std::string& key) const {
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no") {
        return false;
    }
    throw ValidationError(origin_ + ": key '" + key + "' is not a boolean");
}

std::vector<std::string> Config::get_list(const std::string& key) const {
    return split_list(get_string(key));
}

std::vector<std::string> Config::keys_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& key : order_) {
        if (key.rfind(prefix, 0) == 0) {
            out.push_back(key);
        }
    }
    return out;
}

} // namespace simseed
