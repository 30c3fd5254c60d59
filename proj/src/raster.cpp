#include "simseed/raster.hpp"

#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace simseed {

namespace {

constexpr double kExtentSlack = 1e-9;

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::vector<std::string> tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream iss(line);
    std::string tok;
    while (iss >> tok) {
        out.push_back(tok);
    }
    return out;
}

} // namespace

void GridHeader::validate() const {
    if (ncols < 1 || nrows < 1) {
        throw ValidationError("grid header: ncols and nrows must be >= 1");
    }
    if (!(cellsize > 0.0) || !std::isfinite(cellsize)) {
        throw ValidationError("grid header: cellsize must be > 0");
    }
    if (!std::isfinite(xll) || xll < -180.0 || xll >= 180.0) {
        throw ValidationError("grid header: xllcorner must lie in [-180, 180)");
    }
    if (!std::isfinite(yll) || yll < -90.0 || yll >= 90.0) {
        throw ValidationError("grid header: yllcorner must lie in [-90, 90)");
    }
    if (xmax() > 180.0 + kExtentSlack) {
        throw ValidationError("grid header: grid extends east of longitude 180");
    }
    if (ymax() > 90.0 + kExtentSlack) {
        throw ValidationError("grid header: grid extends north of latitude 90");
    }
    if (!std::isfinite(nodata)) {
        throw ValidationError("grid header: nodata sentinel must be finite");
    }
}

void Raster::validate() const {
    header.validate();
    const std::size_t expected = static_cast<std::size_t>(header.ncols) * header.nrows;
    if (values.size() != expected) {
        throw ValidationError("raster: value count " + std::to_string(values.size()) +
                              " does not match " + std::to_string(expected));
    }
    for (double v : values) {
        if (!std::isfinite(v) && v != header.nodata) {
            throw ValidationError("raster: non-finite cell value");
        }
    }
}

double Raster::mass() const {
    double total = 0.0;
    for (double v : values) {
        if (!is_nodata(v)) {
            total += v;
        }
    }
    return total;
}

LatLon cell_center(const GridHeader& h, int row, int col) {
    if (row < 0 || row >= h.nrows || col < 0 || col >= h.ncols) {
        throw ValidationError("cell_center: index (" + std::to_string(row) + ", " +
                              std::to_string(col) + ") outside " + std::to_string(h.nrows) + "x" +
                              std::to_string(h.ncols) + " grid");
    }
    LatLon c;
    c.lon = h.xll + (col + 0.5) * h.cellsize;
    c.lat = h.yll + (h.nrows - row - 0.5) * h.cellsize;
    return c;
}

Raster read_ascii_grid(std::istream& in) {
    static const std::map<std::string, int> kKeys = {
        {"ncols", 0}, {"nrows", 1}, {"xllcorner", 2},
        {"yllcorner", 3}, {"cellsize", 4}, {"nodata_value", 5},
    };

    GridHeader header;
    bool seen[6] = {false, false, false, false, false, false};
    std::string line;
    long line_no = 0;
    std::vector<double> values;

    // Header section: lines whose first token starts with a letter.
    while (true) {
        const auto pos = in.tellg();
        if (!std::getline(in, line)) {
            throw ParseError("ascii grid: ran out of input before data rows", line_no);
        }
        ++line_no;
        const auto toks = tokens(line);
        if (toks.empty()) {
            continue;
        }
        if (!std::isalpha(static_cast<unsigned char>(toks[0][0]))) {
            in.clear();
            in.seekg(pos);
            --line_no;
            break;
        }
        const std::string key = lower(toks[0]);
        auto it = kKeys.find(key);
        if (it == kKeys.end()) {
            throw ParseError("ascii grid: unknown header key '" + toks[0] + "'", line_no);
        }
        if (toks.size() != 2) {
            throw ParseError("ascii grid: header line needs exactly one value", line_no);
        }
        if (seen[it->second]) {
            throw ParseError("ascii grid: duplicate header key '" + key + "'", line_no);
        }
        seen[it->second] = true;
        double v = 0.0;
        if (!try_parse_double(toks[1], v)) {
            throw ParseError("ascii grid: non-numeric header value '" + toks[1] + "'", line_no);
        }
        switch (it->second) {
        case 0:
            if (v != std::floor(v)) {
                throw ParseError("ascii grid: ncols must be an integer", line_no);
            }
            header.ncols = static_cast<int>(v);
            break;
        case 1:
            if (v != std::floor(v)) {
                throw ParseError("ascii grid: nrows must be an integer", line_no);
            }
            header.nrows = static_cast<int>(v);
            break;
        case 2: header.xll = v; break;
        case 3: header.yll = v; break;
        case 4: header.cellsize = v; break;
        case 5: header.nodata = v; break;
        }
    }

    for (int i = 0; i < 5; ++i) {
        if (!seen[i]) {
            throw ParseError("ascii grid: missing required header keys", line_no);
        }
    }
    try {
        header.validate();
    } catch (const ValidationError& e) {
        throw ParseError(std::string("ascii grid: ") + e.what(), line_no);
    }

    values.reserve(static_cast<std::size_t>(header.ncols) * header.nrows);
    int rows_read = 0;
    while (rows_read < header.nrows) {
        if (!std::getline(in, line)) {
            throw ParseError("ascii grid: expected " + std::to_string(header.nrows) +
                                 " data rows, got " + std::to_string(rows_read),
                             line_no);
        }
        ++line_no;
        const auto toks = tokens(line);
        if (toks.empty()) {
            continue;
        }
        if (static_cast<int>(toks.size()) != header.ncols) {
            throw ParseError("ascii grid: row has " + std::to_string(toks.size()) +
                                 " values, ncols is " + std::to_string(header.ncols),
                             line_no);
        }
        for (const auto& tok : toks) {
            double v = 0.0;
            if (!try_parse_double(tok, v)) {
                throw ParseError("ascii grid: non-numeric cell '" + tok + "'", line_no);
            }
            if (!std::isfinite(v) && v != header.nodata) {
                throw ParseError("ascii grid: non-finite cell '" + tok + "'", line_no);
            }
            values.push_back(v);
        }
        ++rows_read;
    }
    // Anything left must be whitespace.
    while (std::getline(in, line)) {
        ++line_no;
        if (!tokens(line).empty()) {
            throw ParseError("ascii grid: trailing data after final row", line_no);
        }
    }

    Raster r;
    r.header = header;
    r.values = std::move(values);
    return r;
}

Raster read_ascii_grid_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open: " + path.string());
    }
    try {
        return read_ascii_grid(in);
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void write_ascii_grid(const Raster& r, std::ostream& out) {
    r.validate();
    out << "ncols " << r.header.ncols << '\n';
    out << "nrows " << r.header.nrows << '\n';
    out << "xllcorner " << format_double(r.header.xll) << '\n';
    out << "yllcorner " << format_double(r.header.yll) << '\n';
    out << "cellsize " << format_double(r.header.cellsize) << '\n';
    out << "NODATA_value " << format_double(r.header.nodata) << '\n';
    for (int row = 0; row < r.header.nrows; ++row) {
        for (int col = 0; col < r.header.ncols; ++col) {
            if (col > 0) {
                out << ' ';
            }
            out << format_double(r.at(row, col));
        }
        out << '\n';
    }
}

void write_ascii_grid_file(const Raster& r, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path.string());
    }
    write_ascii_grid(r, out);
    if (!out) {
        throw IoError("write failed: " + path.string());
    }
}

} // namespace simseed
