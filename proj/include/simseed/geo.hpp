#pragma once

#include "simseed/raster.hpp"

namespace simseed {

inline constexpr double kEarthRadiusM = 6378137.0;

// Spherical web-Mercator validity band.
inline constexpr double kMercatorLatLimit = 85.06;

// Geographic selection box; no antimeridian wrap.
struct BoundingBox {
    double lat_min = 0.0;
    double lat_max = 0.0;
    double lon_min = 0.0;
    double lon_max = 0.0;

    void validate() const;
    bool contains(double lat, double lon) const;
};

struct MercatorPoint {
    double x = 0.0; // meters east of the prime meridian
    double y = 0.0; // meters north of the equator
};

// EPSG:3857 forward projection. Throws outside the validity band.
MercatorPoint to_web_mercator(double lat, double lon);

// Exact analytic inverse of to_web_mercator.
LatLon from_web_mercator(const MercatorPoint& p);

// Sub-raster of exactly those cells whose centers fall inside `box`
// (inclusive bounds). Values are copied, never resampled.
Raster subset(const Raster& r, const BoundingBox& box);

// Aggregates to cells of 10^-decimals degrees by summing source cells into
// the target cell containing their center. The output origin snaps to the
// multiple of the target cellsize at or below the source origin, so any two
// rasters coarsened to the same decimals are cell-aligned. Output cells
// with no finite contribution are nodata. `threads` only splits the work;
// the result is bitwise identical for any value.
Raster coarsen(const Raster& r, int decimals, int threads = 1);

// Equatorial arc length of one cell edge at 10^-decimals degrees.
double cell_size_meters(int decimals);

} // namespace simseed
