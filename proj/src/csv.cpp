#include "simseed/csv.hpp"

#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

namespace simseed {

namespace {

bool needs_quoting(const std::string& field) {
    return field.find_first_of(",\"\n\r") != std::string::npos;
}

std::string quote(const std::string& field) {
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string render(const CsvValue& value) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(const std::string& s) const { return needs_quoting(s) ? quote(s) : s; }
        std::string operator()(long long v) const { return format_int(v); }
        std::string operator()(double v) const { return format_double(v); }
    };
    return std::visit(Visitor{}, value);
}

} // namespace

void write_table_csv(const CsvTable& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        out << (needs_quoting(table.columns[i]) ? quote(table.columns[i]) : table.columns[i]);
    }
    out << '\n';
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.columns.size()) {
            throw ValidationError("csv row " + std::to_string(r + 1) + " has " +
                                  std::to_string(row.size()) + " fields, schema has " +
                                  std::to_string(table.columns.size()));
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            out << render(row[i]);
        }
        out << '\n';
    }
}

void write_table_csv_file(const CsvTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    write_table_csv(table, out);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

std::size_t RawCsv::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) {
            return i;
        }
    }
    throw ParseError("csv is missing column '" + name + "'");
}

RawCsv read_table_csv(std::istream& in) {
    const std::string text(std::istreambuf_iterator<char>(in), {});

    RawCsv out;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool record_started = false;
    long line = 1;

    auto flush_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        if (out.columns.empty()) {
            out.columns = std::move(record);
        } else {
            if (record.size() != out.columns.size()) {
                throw ParseError("csv row has " + std::to_string(record.size()) +
                                     " fields, header has " + std::to_string(out.columns.size()),
                                 line);
            }
            out.rows.push_back(std::move(record));
        }
        record.clear();
        record_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field += c;
                if (c == '\n') {
                    ++line;
                }
            }
            continue;
        }
        switch (c) {
        case '"':
            in_quotes = true;
            record_started = true;
            break;
        case ',':
            record.push_back(std::move(field));
            field.clear();
            record_started = true;
            break;
        case '\r':
            break;
        case '\n':
            if (record_started || !field.empty()) {
                flush_record();
            }
            ++line;
            break;
        default:
            field += c;
            record_started = true;
        }
    }
    if (in_quotes) {
        throw ParseError("unterminated quoted csv field", line);
    }
    if (record_started || !field.empty()) {
        flush_record();
    }
    if (out.columns.empty()) {
        throw ParseError("empty csv: no header row");
    }
    return out;
}

RawCsv read_table_csv_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open: " + path.string());
    }
    return read_table_csv(in);
}

} // namespace simseed
