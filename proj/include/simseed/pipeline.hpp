#pragma once

#include "simseed/evapo.hpp"
#include "simseed/geo.hpp"
#include "simseed/popsynth.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace simseed {

inline constexpr const char* kRunLogName = "run_log.txt";

// The six climate forcing variables every month must provide, in canonical
// order: air temperature (degC), specific humidity (kg/kg), net shortwave,
// net longwave (MJ m^-2 day^-1, positive outgoing), wind at 2 m (m/s),
// actual evapotranspiration (mm/day).
extern const std::vector<std::string> kClimateVariables;

// Ordered transformation log. One STEP line per transformation with shapes
// and mass totals; WARN lines for non-fatal conditions. The log is printed
// to stdout by the CLI and saved as run_log.txt next to the outputs.
struct RunLog {
    std::vector<std::string> lines;

    void step(const std::string& name, int in_rows, int in_cols, int out_rows, int out_cols,
              double mass_in, double mass_out);
    void warn(const std::string& message);
    std::string text() const;
    void save(const std::filesystem::path& path) const;
};

struct RunResult {
    std::filesystem::path store_dir; // empty when the run makes no store
    std::vector<std::filesystem::path> artifacts;
    RunLog log;
};

struct PopulationJob {
    std::filesystem::path density_grid; // empty = skip the density stage
    std::vector<std::pair<DemographicKey, std::filesystem::path>> group_grids;
    StoreMeta meta; // carries bbox, decimals, country, year, genders, brackets
    bool keep_zeros = false;
    std::uint64_t seed = 0;
    bool sample_ages = false;
    bool make_roster = true;
    std::filesystem::path out_dir;
    std::string plot_format = "svg"; // or "png"
    int threads = 1;
};

// Density stage: grid -> subset -> coarsen -> integerize -> table; writes
// density.csv and a heatmap.
RunResult run_pop_density(const PopulationJob& job);

// Demographics stage: every group grid through the same chain; writes the
// population store (plus total.csv integerized from the density grid when
// one is given), pyramid.csv and the pyramid chart.
RunResult run_pop_demographics(const PopulationJob& job);

// Agent stage: store -> roster CSV.
RunResult run_pop_agents(const std::filesystem::path& store_dir, std::uint64_t seed,
                         bool sample_ages, const std::filesystem::path& out_csv);

// All population stages in order. Any stage failure aborts with the stage
// name in the message and removes this run's partial outputs.
RunResult run_population(const PopulationJob& job);

// Resolved climate inputs: for each variable, one grid path per requested
// month (aligned with `months`), plus one elevation grid.
struct ClimateBundle {
    std::vector<YearMonth> months;
    std::map<std::string, std::vector<std::filesystem::path>> files;
    std::filesystem::path elevation;
};

struct CropJob {
    ClimateBundle climate;
    std::filesystem::path crops_file;
    std::vector<std::string> crops; // regional mode uses exactly one
    double lat = 0.0;               // location mode
    double lon = 0.0;
    BoundingBox bbox;               // regional mode
    bool cap100 = false;
    std::filesystem::path out_dir;
    std::string plot_format = "svg";
    int threads = 1;
};

// Per-month WRSI series for the crops at the grid cell nearest to
// (job.lat, job.lon); writes wrsi_location.csv (one row per crop-month plus
// one seasonal row per crop) and a multi-series time-series plot.
RunResult run_crop_location(const CropJob& job);

// Per-cell monthly WRSI grids for one crop over the bbox; writes one CSV
// (lat, lon, wrsi; nodata omitted) and one heatmap per month.
RunResult run_crop_regional(const CropJob& job);

// Actual vapor pressure (kPa) from specific humidity at elevation.
double derive_vapor_pressure(double q, double elevation_m);

} // namespace simseed
