#include "simseed/geo.hpp"

#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"
#include "simseed/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace simseed {

namespace {

constexpr double kDegSlack = 1e-9;

double deg_to_rad(double deg) {
    return deg * (std::numbers::pi / 180.0);
}

double rad_to_deg(double rad) {
    return rad * (180.0 / std::numbers::pi);
}

// Index of the target-grid line at or below `coord`, in units of the
// target cellsize. The slack absorbs representation noise so that grids
// already sitting on the target lattice snap exactly.
long long snap_index(double coord, double target) {
    const double u = coord / target;
    return static_cast<long long>(std::floor(u + 1e-9 + std::abs(u) * 1e-12));
}

// Bin of a coordinate relative to an origin line, with the same slack
// convention: centers sitting exactly on a bin boundary go to the upper bin.
long long bin_index(double coord, double origin, double target) {
    const double u = (coord - origin) / target;
    return static_cast<long long>(std::floor(u + 1e-9 + std::abs(u) * 1e-12));
}

// 10^-decimals as the exact nearest double, bypassing libm rounding
// differences.
double decimal_cellsize(int decimals) {
    static constexpr double kSteps[] = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
    return kSteps[decimals - 2];
}

} // namespace

void BoundingBox::validate() const {
    if (!(lat_min < lat_max) || !(lon_min < lon_max)) {
        throw ValidationError("bbox: requires lat_min < lat_max and lon_min < lon_max");
    }
    if (lat_min < -90.0 || lat_max > 90.0 || lon_min < -180.0 || lon_max > 180.0) {
        throw ValidationError("bbox: outside world extent");
    }
}

bool BoundingBox::contains(double lat, double lon) const {
    return lat >= lat_min - kDegSlack && lat <= lat_max + kDegSlack &&
           lon >= lon_min - kDegSlack && lon <= lon_max + kDegSlack;
}

MercatorPoint to_web_mercator(double lat, double lon) {
    if (!std::isfinite(lat) || std::abs(lat) > kMercatorLatLimit) {
        throw ValidationError("to_web_mercator: latitude " + format_double(lat) +
                              " outside the +/-" + format_double(kMercatorLatLimit) +
                              " validity band");
    }
    if (!std::isfinite(lon) || std::abs(lon) > 180.0) {
        throw ValidationError("to_web_mercator: longitude " + format_double(lon) +
                              " outside [-180, 180]");
    }
    MercatorPoint p;
    p.x = kEarthRadiusM * deg_to_rad(lon);
    // atanh(sin(phi)) == ln(tan(pi/4 + phi/2)), exact at the equator.
    p.y = kEarthRadiusM * std::atanh(std::sin(deg_to_rad(lat)));
    return p;
}

LatLon from_web_mercator(const MercatorPoint& p) {
    const double x_limit = kEarthRadiusM * std::numbers::pi + 1e-6;
    const double y_limit = kEarthRadiusM * std::atanh(std::sin(deg_to_rad(kMercatorLatLimit))) + 1e-6;
    if (!std::isfinite(p.x) || std::abs(p.x) > x_limit || !std::isfinite(p.y) ||
        std::abs(p.y) > y_limit) {
        throw ValidationError("from_web_mercator: point outside world bounds");
    }
    LatLon c;
    c.lon = rad_to_deg(p.x / kEarthRadiusM);
    c.lat = rad_to_deg(std::atan(std::sinh(p.y / kEarthRadiusM)));
    return c;
}

Raster subset(const Raster& r, const BoundingBox& box) {
    box.validate();
    const GridHeader& h = r.header;
    const double cs = h.cellsize;

    // First/last column whose center longitude lies in [lon_min, lon_max].
    const int col_lo = std::max(
        0, static_cast<int>(std::ceil((box.lon_min - h.xll) / cs - 0.5 - kDegSlack / cs)));
    const int col_hi = std::min(
        h.ncols - 1, static_cast<int>(std::floor((box.lon_max - h.xll) / cs - 0.5 + kDegSlack / cs)));
    // Same for south-based row indices against latitude.
    const int south_lo = std::max(
        0, static_cast<int>(std::ceil((box.lat_min - h.yll) / cs - 0.5 - kDegSlack / cs)));
    const int south_hi = std::min(
        h.nrows - 1, static_cast<int>(std::floor((box.lat_max - h.yll) / cs - 0.5 + kDegSlack / cs)));

    if (col_lo > col_hi || south_lo > south_hi) {
        throw ValidationError("subset: empty intersection, no cell center falls inside the box");
    }

    const int row_lo = h.nrows - 1 - south_hi; // northmost kept row
    const int row_hi = h.nrows - 1 - south_lo; // southmost kept row

    Raster out;
    out.header.ncols = col_hi - col_lo + 1;
    out.header.nrows = row_hi - row_lo + 1;
    out.header.cellsize = cs;
    out.header.nodata = h.nodata;
    out.header.xll = h.xll + col_lo * cs;
    out.header.yll = h.yll + south_lo * cs;
    out.values.resize(static_cast<std::size_t>(out.header.ncols) * out.header.nrows);
    for (int row = row_lo; row <= row_hi; ++row) {
        for (int col = col_lo; col <= col_hi; ++col) {
            out.at(row - row_lo, col - col_lo) = r.at(row, col);
        }
    }
    return out;
}

Raster coarsen(const Raster& r, int decimals, int threads) {
    if (decimals < 2 || decimals > 6) {
        throw ValidationError("coarsen: decimals must lie in [2, 6], got " +
                              std::to_string(decimals));
    }
    const GridHeader& h = r.header;
    const double target = decimal_cellsize(decimals);
    if (target < h.cellsize - 1e-12) {
        throw ValidationError("coarsen: target cellsize " + format_double(target) +
                              " is finer than the source cellsize " + format_double(h.cellsize));
    }

    const long long ox_idx = snap_index(h.xll, target);
    const long long oy_idx = snap_index(h.yll, target);
    const double ox = static_cast<double>(ox_idx) * target;
    const double oy = static_cast<double>(oy_idx) * target;

    // Output dimensions cover every source cell center.
    const double last_center_lon = h.xll + (h.ncols - 0.5) * h.cellsize;
    const double last_center_lat = h.yll + (h.nrows - 0.5) * h.cellsize;
    const int out_ncols = static_cast<int>(bin_index(last_center_lon, ox, target)) + 1;
    const int out_nrows = static_cast<int>(bin_index(last_center_lat, oy, target)) + 1;

    Raster out;
    out.header.ncols = out_ncols;
    out.header.nrows = out_nrows;
    out.header.cellsize = target;
    out.header.nodata = h.nodata;
    out.header.xll = ox;
    out.header.yll = oy;
    out.values.assign(static_cast<std::size_t>(out_ncols) * out_nrows, h.nodata);

    // Column bins are shared by every source row.
    std::vector<int> col_bin(static_cast<std::size_t>(h.ncols));
    for (int col = 0; col < h.ncols; ++col) {
        const double lon = h.xll + (col + 0.5) * h.cellsize;
        col_bin[static_cast<std::size_t>(col)] = static_cast<int>(bin_index(lon, ox, target));
    }
    // Each source row lands in exactly one output row; group them so output
    // rows can be filled independently. Accumulation per output cell runs in
    // row-major source order, which keeps the sums identical regardless of
    // how the work is split.
    std::vector<std::vector<int>> rows_for_out(static_cast<std::size_t>(out_nrows));
    for (int row = 0; row < h.nrows; ++row) {
        const double lat = h.yll + (h.nrows - row - 0.5) * h.cellsize;
        const int south_bin = static_cast<int>(bin_index(lat, oy, target));
        rows_for_out[static_cast<std::size_t>(out_nrows - 1 - south_bin)].push_back(row);
    }

    parallel_chunks(out_nrows, threads, [&](int begin, int end) {
        for (int out_row = begin; out_row < end; ++out_row) {
            // Source rows were collected north to south, already in order.
            for (int row : rows_for_out[static_cast<std::size_t>(out_row)]) {
                for (int col = 0; col < h.ncols; ++col) {
                    const double v = r.at(row, col);
                    if (r.is_nodata(v)) {
                        continue;
                    }
                    double& cell = out.at(out_row, col_bin[static_cast<std::size_t>(col)]);
                    cell = out.is_nodata(cell) ? v : cell + v;
                }
            }
        }
    });
    return out;
}

double cell_size_meters(int decimals) {
    if (decimals < 2 || decimals > 6) {
        throw ValidationError("cell_size_meters: decimals must lie in [2, 6]");
    }
    return decimal_cellsize(decimals) * (std::numbers::pi * kEarthRadiusM / 180.0);
}

} // namespace simseed
