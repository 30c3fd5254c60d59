#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace simseed {

// Geometry of a corner-registered grid. (xll, yll) is the outer corner of
// the southwest cell, row 0 of the value array is the northernmost row.
struct GridHeader {
    int ncols = 0;
    int nrows = 0;
    double xll = 0.0;
    double yll = 0.0;
    double cellsize = 0.0;
    double nodata = -9999.0;

    double xmax() const { return xll + ncols * cellsize; }
    double ymax() const { return yll + nrows * cellsize; }

    // Throws ValidationError when dimensions or world extent are violated.
    void validate() const;

    bool operator==(const GridHeader&) const = default;
};

struct LatLon {
    double lat = 0.0;
    double lon = 0.0;
};

// Row-major grid of real values; cells equal to header.nodata carry no
// measurement. Immutable by convention once built.
struct Raster {
    GridHeader header;
    std::vector<double> values;

    double at(int row, int col) const { return values[static_cast<std::size_t>(row) * header.ncols + col]; }
    double& at(int row, int col) { return values[static_cast<std::size_t>(row) * header.ncols + col]; }
    bool is_nodata(double v) const { return v == header.nodata; }

    void validate() const;

    // Sum of all non-nodata cells, accumulated in row-major order.
    double mass() const;

    bool operator==(const Raster&) const = default;
};

// Center coordinates of cell (row, col); row 0 is the northernmost row.
LatLon cell_center(const GridHeader& h, int row, int col);

// ESRI ASCII grid: header lines ncols/nrows/xllcorner/yllcorner/cellsize
// and optional NODATA_value (default -9999), then nrows data lines of
// ncols whitespace-separated numbers, top row first. Header keys are
// case-insensitive. Errors carry the offending line number.
Raster read_ascii_grid(std::istream& in);
Raster read_ascii_grid_file(const std::filesystem::path& path);

// Inverse of read_ascii_grid; values printed with shortest round-trip
// decimals so read(write(r)) == r exactly.
void write_ascii_grid(const Raster& r, std::ostream& out);
void write_ascii_grid_file(const Raster& r, const std::filesystem::path& path);

} // namespace simseed
