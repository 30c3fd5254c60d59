#pragma once

#include "simseed/evapo.hpp"
#include "simseed/popsynth.hpp"

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace simseed {

// Common plot configuration. The output format is chosen by the path
// extension: .svg (text, diff-friendly) or .png (bitmap).
struct PlotSpec {
    std::string title;
    int width = 900;
    int height = 600;
    std::string ramp = "viridis";
    std::filesystem::path out_path;

    void validate() const;
};

struct HeatCell {
    double lat = 0.0;
    double lon = 0.0;
    double value = 0.0; // NaN renders as transparent (nodata)
};

// Grid-aligned colored-cell map with legend, title and lat/lon axis ticks.
// Cell size is inferred from the smallest coordinate gap.
void emit_heatmap(std::span<const HeatCell> cells, const PlotSpec& spec);

// Grouped vertical bars: one group per age bracket, one series per gender.
void emit_pyramid(std::span<const PyramidRow> rows, const PlotSpec& spec);

struct TimeSeries {
    std::string label;
    std::vector<std::optional<double>> values; // aligned with the month axis
};

// One polyline per series over a shared month axis; gaps break the line.
void emit_timeseries(std::span<const YearMonth> months, std::span<const TimeSeries> series,
                     const PlotSpec& spec);

// Frame plus a centered note; used when a requested view has no data
// (e.g. a fully dormant month) so the output set stays complete.
void emit_blank(const PlotSpec& spec, const std::string& note);

} // namespace simseed
