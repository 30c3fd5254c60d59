#pragma once

#include "simseed/csv.hpp"
#include "simseed/geo.hpp"
#include "simseed/raster.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace simseed {

// One grid cell of integer population at the store's coordinate precision.
// Rows are kept sorted north to south, then west to east.
struct PopulationRow {
    double lat = 0.0;
    double lon = 0.0;
    double merc_x = 0.0;
    double merc_y = 0.0;
    long long count = 0;

    bool operator==(const PopulationRow&) const = default;
};

struct PopulationTable {
    std::vector<PopulationRow> rows;

    long long total() const;

    bool operator==(const PopulationTable&) const = default;
};

struct DemographicKey {
    std::string gender;  // "f" or "m"
    std::string bracket; // age-bracket label from the manifest

    std::string file_stem() const { return gender + "_" + bracket; }

    bool operator==(const DemographicKey&) const = default;
};

struct BracketDef {
    std::string label;
    int year_lo = 0;
    int year_hi = 0;

    bool operator==(const BracketDef&) const = default;
};

struct StoreMeta {
    std::string country;
    int year = 0;
    int decimals = 0;
    BoundingBox bbox;
    std::vector<std::string> genders;
    std::vector<BracketDef> brackets; // ordered; defines group iteration order

    const BracketDef& bracket(const std::string& label) const;
};

// The population store: one integer table per (gender, bracket) group, in
// manifest order, plus an optional total-population table.
struct DemographicStore {
    StoreMeta meta;
    std::vector<std::pair<DemographicKey, PopulationTable>> groups;
    std::optional<PopulationTable> total;

    const PopulationTable* find(const DemographicKey& key) const;
};

struct AgentRecord {
    long long agent_id = 0;
    std::string gender;
    std::string bracket;
    std::optional<int> age_years;
    double lat = 0.0;
    double lon = 0.0;

    bool operator==(const AgentRecord&) const = default;
};

struct PyramidRow {
    std::string gender;
    std::string bracket;
    long long count = 0;
};

struct ConsistencyReport {
    std::size_t cells = 0;     // cells in the union of coordinate sets
    long long max_abs = 0;     // max |sum of groups - total| over cells
    double mean_abs = 0.0;
};

// Core of the integerization scheme, defined on (cell identity, value)
// pairs so the result cannot depend on storage order. Returns one integer
// count per input entry, aligned with the input. Each count is floor(v) or
// floor(v) + 1, and the counts sum to round-half-even of the exact-order
// value sum. The +1 recipients are the leading cells of the total order
// (value descending, fractional part descending, identity ascending),
// restricted to cells with a fractional part; any shortfall spills to the
// same order over the remaining cells.
std::vector<long long> apportion_counts(std::span<const std::pair<long long, double>> cells);

// Converts a non-negative real raster to whole persons, conserving the
// rounded total. Nodata cells pass through untouched.
Raster integerize(const Raster& r);

// One row per counted cell; coordinates are cell centers quantized to
// `decimals` places (the raster cellsize must be 10^-decimals, i.e. the
// output of coarsen). Zero-count cells are dropped unless keep_zeros.
PopulationTable make_population_table(const Raster& r, int decimals, bool keep_zeros = false);

// Called after each raster transformation: (group label, step name,
// input, output). Lets callers log shapes and check mass ledgers without
// re-running the chain.
using StageObserver =
    std::function<void(const std::string&, const std::string&, const Raster&, const Raster&)>;

// Runs subset -> coarsen -> integerize -> table for every group in
// meta order. `groups` must cover exactly meta.genders x meta.brackets and
// share one source geometry. `threads` parallelizes the coarsening step.
DemographicStore build_demographics(const std::vector<std::pair<DemographicKey, Raster>>& groups,
                                    const StoreMeta& meta, bool keep_zeros = false,
                                    int threads = 1, const StageObserver& observer = {});

// Emits `count` agents per table row, groups in manifest order, ids dense
// from 0. With sample_ages each agent's age is drawn uniformly inside its
// bracket from a counter-based generator keyed on (seed, group, row, copy),
// so the roster is a pure function of (store, seed).
std::vector<AgentRecord> spawn_agents(const DemographicStore& store, std::uint64_t seed,
                                      bool sample_ages);

// Per-group totals in manifest order.
std::vector<PyramidRow> pyramid(const DemographicStore& store);

// Compares the per-cell sum of all group tables against an independently
// integerized total table. Throws when the coordinate sets are disjoint.
ConsistencyReport consistency_report(const DemographicStore& store, const PopulationTable& total);

// Directory layout: manifest.json plus groups/<gender>_<bracket>.csv and
// an optional total.csv.
void save_store(const DemographicStore& store, const std::filesystem::path& dir);
DemographicStore load_store(const std::filesystem::path& dir);

// CSV renderings of the store tables.
CsvTable population_csv(const PopulationTable& table);
CsvTable roster_csv(std::span<const AgentRecord> roster);
CsvTable pyramid_csv(std::span<const PyramidRow> rows);

} // namespace simseed
