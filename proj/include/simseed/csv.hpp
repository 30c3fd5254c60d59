#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace simseed {

// One CSV field. monostate renders as an empty field (e.g. an unsampled
// age); long long renders without a decimal point.
using CsvValue = std::variant<std::monostate, std::string, long long, double>;

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<CsvValue>> rows;
};

// RFC-4180-style output: header first, LF line endings, UTF-8, fields
// quoted only when they contain a comma, quote or newline. Numeric fields
// use shortest round-trip decimals.
void write_table_csv(const CsvTable& table, std::ostream& out);
void write_table_csv_file(const CsvTable& table, const std::filesystem::path& path);

// Reads a CSV produced by write_table_csv (or any RFC-4180 file).
// All cells come back as strings; callers convert.
struct RawCsv {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    // Index of a required column, or throws ParseError.
    std::size_t column(const std::string& name) const;
};

RawCsv read_table_csv(std::istream& in);
RawCsv read_table_csv_file(const std::filesystem::path& path);

} // namespace simseed
