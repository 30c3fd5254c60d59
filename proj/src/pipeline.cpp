#include "simseed/pipeline.hpp"

#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"
#include "simseed/parallel.hpp"
#include "simseed/plot.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <optional>

namespace simseed {

const std::vector<std::string> kClimateVariables = {"tair", "qair", "netsw",
                                                    "netlw", "wind", "aet"};

namespace {

namespace fs = std::filesystem;

// Re-throws the in-flight exception with the failing stage's name in front,
// preserving the exception type (and with it the CLI exit code).
[[noreturn]] void rethrow_with_stage(const std::string& stage) {
    const std::string tag = "stage " + stage + ": ";
    try {
        throw;
    } catch (const ParseError& e) {
        throw ParseError(tag + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(tag + e.what());
    } catch (const IoError& e) {
        throw IoError(tag + e.what());
    } catch (const NetworkError& e) {
        throw NetworkError(tag + e.what());
    } catch (const InternalError& e) {
        throw InternalError(tag + e.what());
    } catch (const std::exception& e) {
        throw Error(tag + e.what());
    }
}

template <class F>
auto run_stage(const std::string& stage, F&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (...) {
        rethrow_with_stage(stage);
    }
}

// Tracks what a run writes so a failed run can remove its partial outputs.
struct Ctx {
    RunLog log;
    std::vector<fs::path> artifacts;
    std::vector<fs::path> cleanup_files;
    std::vector<fs::path> cleanup_dirs;
    fs::path store_dir;

    void track(const fs::path& p, bool artifact = true) {
        cleanup_files.push_back(p);
        if (artifact) artifacts.push_back(p);
    }

    void discard_outputs() {
        std::error_code ec;
        for (const auto& p : cleanup_files) fs::remove(p, ec);
        // Directories in reverse creation order so children go first; only
        // empty ones are removed, pre-existing content stays.
        for (auto it = cleanup_dirs.rbegin(); it != cleanup_dirs.rend(); ++it) fs::remove(*it, ec);
    }
};

void make_dir(Ctx& ctx, const fs::path& dir) {
    if (dir.empty() || fs::exists(dir)) return;
    make_dir(ctx, dir.parent_path());
    std::error_code ec;
    if (!fs::create_directory(dir, ec) || ec)
        throw IoError("cannot create directory " + dir.string() + ": " + ec.message());
    ctx.cleanup_dirs.push_back(dir);
}

template <class F>
RunResult guarded(Ctx& ctx, const fs::path& log_dir, F&& body) {
    try {
        body();
        make_dir(ctx, log_dir);
        const fs::path log_path = log_dir / kRunLogName;
        ctx.log.save(log_path);
        ctx.artifacts.push_back(log_path);
        return {ctx.store_dir, std::move(ctx.artifacts), std::move(ctx.log)};
    } catch (...) {
        ctx.discard_outputs();
        throw;
    }
}

void log_raster_step(Ctx& ctx, const std::string& name, const Raster& in, const Raster& out) {
    ctx.log.step(name, in.header.nrows, in.header.ncols, out.header.nrows, out.header.ncols,
                 in.mass(), out.mass());
}

// The population chain shared by the density grid and every demographic
// group, with the two mass-ledger invariants enforced.
struct ChainResult {
    Raster counts;
    PopulationTable table;
};

void check_mass_ledger(const std::string& label, const std::string& step, const Raster& in,
                       const Raster& out) {
    if (step == "coarsen") {
        const double rel = std::max(1.0, std::abs(in.mass()));
        if (std::abs(out.mass() - in.mass()) > 1e-6 * rel)
            throw InternalError("mass ledger broken in coarsen[" + label + "]: " +
                                format_double(in.mass()) + " -> " + format_double(out.mass()));
    } else if (step == "integerize") {
        if (static_cast<long long>(out.mass()) != round_half_even(in.mass()))
            throw InternalError("mass ledger broken in integerize[" + label + "]: " +
                                format_double(in.mass()) + " -> " + format_double(out.mass()));
    }
}

ChainResult population_chain(Ctx& ctx, const std::string& label, const Raster& source,
                             const StoreMeta& meta, bool keep_zeros, int threads) {
    Raster cut = run_stage("subset[" + label + "]", [&] { return subset(source, meta.bbox); });
    log_raster_step(ctx, "subset[" + label + "]", source, cut);

    Raster coarse =
        run_stage("coarsen[" + label + "]", [&] { return coarsen(cut, meta.decimals, threads); });
    check_mass_ledger(label, "coarsen", cut, coarse);
    log_raster_step(ctx, "coarsen[" + label + "]", cut, coarse);

    Raster counts = run_stage("integerize[" + label + "]", [&] { return integerize(coarse); });
    check_mass_ledger(label, "integerize", coarse, counts);
    log_raster_step(ctx, "integerize[" + label + "]", coarse, counts);

    PopulationTable table = run_stage("table[" + label + "]", [&] {
        return make_population_table(counts, meta.decimals, keep_zeros);
    });
    ctx.log.step("table[" + label + "]", counts.header.nrows, counts.header.ncols,
                 static_cast<int>(table.rows.size()), 5, counts.mass(),
                 static_cast<double>(table.total()));
    return {std::move(counts), std::move(table)};
}

Raster read_grid_logged(Ctx& ctx, const std::string& label, const fs::path& path) {
    Raster r = run_stage("read[" + label + "]", [&] { return read_ascii_grid_file(path); });
    log_raster_step(ctx, "read[" + label + "]", r, r);
    return r;
}

void write_table(Ctx& ctx, const CsvTable& table, const fs::path& path) {
    ctx.track(path);
    run_stage("write[" + path.filename().string() + "]", [&] { write_table_csv_file(table, path); });
}

std::vector<HeatCell> heat_cells(const PopulationTable& table) {
    std::vector<HeatCell> cells;
    cells.reserve(table.rows.size());
    for (const auto& r : table.rows)
        cells.push_back({r.lat, r.lon, static_cast<double>(r.count)});
    return cells;
}

PlotSpec plot_spec(const std::string& title, const fs::path& path) {
    PlotSpec spec;
    spec.title = title;
    spec.out_path = path;
    return spec;
}

void density_stage(Ctx& ctx, const PopulationJob& job) {
    const Raster density = read_grid_logged(ctx, "density", job.density_grid);
    ChainResult chain =
        population_chain(ctx, "density", density, job.meta, job.keep_zeros, job.threads);

    write_table(ctx, population_csv(chain.table), job.out_dir / "density.csv");

    const fs::path plot_path = job.out_dir / ("density." + job.plot_format);
    ctx.track(plot_path);
    run_stage("plot[density]", [&] {
        if (chain.table.rows.empty())
            emit_blank(plot_spec("Population counts", plot_path), "no populated cells");
        else
            emit_heatmap(heat_cells(chain.table), plot_spec("Population counts", plot_path));
    });
    if (chain.table.rows.empty()) ctx.log.warn("density table is empty");
}

fs::path demographics_stage(Ctx& ctx, const PopulationJob& job, DemographicStore& store_out) {
    std::vector<std::pair<DemographicKey, Raster>> inputs;
    inputs.reserve(job.group_grids.size());
    for (const auto& [key, path] : job.group_grids)
        inputs.emplace_back(key, read_grid_logged(ctx, key.file_stem(), path));

    // The observer records the integerized shape and mass per group so the
    // table step below can report its true input.
    std::map<std::string, std::pair<std::pair<int, int>, double>> integerized;
    DemographicStore store = run_stage("demographics", [&] {
        return build_demographics(
            inputs, job.meta, job.keep_zeros, job.threads,
            [&](const std::string& label, const std::string& step, const Raster& in,
                const Raster& out) {
                check_mass_ledger(label, step, in, out);
                log_raster_step(ctx, step + "[" + label + "]", in, out);
                if (step == "integerize")
                    integerized[label] = {{out.header.nrows, out.header.ncols}, out.mass()};
            });
    });
    for (const auto& [key, table] : store.groups) {
        const auto& [in_shape, in_mass] = integerized.at(key.file_stem());
        ctx.log.step("table[" + key.file_stem() + "]", in_shape.first, in_shape.second,
                     static_cast<int>(table.rows.size()), 5, in_mass,
                     static_cast<double>(table.total()));
    }

    if (!job.density_grid.empty()) {
        const Raster density = read_grid_logged(ctx, "total", job.density_grid);
        ChainResult chain =
            population_chain(ctx, "total", density, job.meta, job.keep_zeros, job.threads);
        store.total = std::move(chain.table);
    }

    const fs::path store_dir = job.out_dir / "store";
    // Enumerate the store files up front so a failed write can be undone.
    ctx.cleanup_files.push_back(store_dir / "manifest.json");
    for (const auto& [key, table] : store.groups)
        ctx.cleanup_files.push_back(store_dir / "groups" / (key.file_stem() + ".csv"));
    if (store.total) ctx.cleanup_files.push_back(store_dir / "total.csv");
    make_dir(ctx, store_dir / "groups");
    run_stage("write[store]", [&] { save_store(store, store_dir); });
    ctx.artifacts.push_back(store_dir / "manifest.json");

    const auto rows = pyramid(store);
    write_table(ctx, pyramid_csv(rows), job.out_dir / "pyramid.csv");
    const fs::path plot_path = job.out_dir / ("pyramid." + job.plot_format);
    ctx.track(plot_path);
    run_stage("plot[pyramid]", [&] {
        emit_pyramid(rows, plot_spec("Population by age bracket and gender", plot_path));
    });

    store_out = std::move(store);
    return store_dir;
}

void agents_stage(Ctx& ctx, const DemographicStore& store, std::uint64_t seed, bool sample_ages,
                  const fs::path& out_csv) {
    const std::vector<AgentRecord> roster =
        run_stage("agents", [&] { return spawn_agents(store, seed, sample_ages); });
    long long store_total = 0;
    int store_rows = 0;
    for (const auto& [key, table] : store.groups) {
        store_total += table.total();
        store_rows += static_cast<int>(table.rows.size());
    }
    if (static_cast<long long>(roster.size()) != store_total)
        throw InternalError("agents: roster length " + std::to_string(roster.size()) +
                            " != store total " + format_int(store_total));
    ctx.log.step("agents", store_rows, 5, static_cast<int>(roster.size()), 6,
                 static_cast<double>(store_total), static_cast<double>(roster.size()));
    write_table(ctx, roster_csv(roster), out_csv);
}

// ---------------------------------------------------------------------------
// Crop pipelines.

struct ClimateData {
    Raster elevation;
    // kClimateVariables order; inner vector aligned with bundle months.
    std::vector<std::vector<Raster>> vars;
};

void check_geometry(const GridHeader& a, const GridHeader& b, const std::string& what) {
    if (a.ncols != b.ncols || a.nrows != b.nrows || a.xll != b.xll || a.yll != b.yll ||
        a.cellsize != b.cellsize)
        throw ValidationError("climate grid '" + what + "' does not match the common geometry");
}

ClimateData load_climate(Ctx& ctx, const ClimateBundle& bundle) {
    if (bundle.months.empty()) throw ValidationError("no months requested");
    for (const auto& var : kClimateVariables) {
        const auto it = bundle.files.find(var);
        if (it == bundle.files.end() || it->second.size() != bundle.months.size())
            throw ValidationError("climate variable '" + var +
                                  "' is not available for every requested month");
    }

    ClimateData data;
    data.elevation = read_grid_logged(ctx, "elevation", bundle.elevation);
    data.vars.resize(kClimateVariables.size());
    for (std::size_t v = 0; v < kClimateVariables.size(); ++v) {
        const auto& paths = bundle.files.at(kClimateVariables[v]);
        for (std::size_t i = 0; i < bundle.months.size(); ++i) {
            const std::string label = kClimateVariables[v] + " " + bundle.months[i].str();
            Raster r = read_grid_logged(ctx, label, paths[i]);
            run_stage("read[" + label + "]",
                      [&] { check_geometry(r.header, data.elevation.header, label); });
            data.vars[v].push_back(std::move(r));
        }
    }
    return data;
}

ClimateData subset_climate(Ctx& ctx, const ClimateData& data, const BoundingBox& box,
                           const std::vector<YearMonth>& months) {
    ClimateData out;
    out.elevation =
        run_stage("subset[elevation]", [&] { return subset(data.elevation, box); });
    log_raster_step(ctx, "subset[elevation]", data.elevation, out.elevation);
    out.vars.resize(data.vars.size());
    for (std::size_t v = 0; v < data.vars.size(); ++v) {
        for (std::size_t i = 0; i < data.vars[v].size(); ++i) {
            const std::string label = kClimateVariables[v] + " " + months[i].str();
            Raster cut = run_stage("subset[" + label + "]",
                                   [&] { return subset(data.vars[v][i], box); });
            log_raster_step(ctx, "subset[" + label + "]", data.vars[v][i], cut);
            out.vars[v].push_back(std::move(cut));
        }
    }
    return out;
}

enum VarIndex { kTair = 0, kQair, kNetSw, kNetLw, kWind, kAet };

// Climate record for one cell and month; nullopt when any input is nodata.
std::optional<ClimateRecord> record_at(const ClimateData& data, const YearMonth& month,
                                       std::size_t mi, int row, int col) {
    const double elev = data.elevation.at(row, col);
    if (data.elevation.is_nodata(elev)) return std::nullopt;
    double v[6];
    for (std::size_t k = 0; k < 6; ++k) {
        v[k] = data.vars[k][mi].at(row, col);
        if (data.vars[k][mi].is_nodata(v[k])) return std::nullopt;
    }
    ClimateRecord rec;
    rec.year_month = month;
    rec.tair_c = v[kTair];
    rec.ea_kpa = derive_vapor_pressure(v[kQair], elev);
    rec.net_sw = v[kNetSw];
    rec.net_lw = v[kNetLw];
    rec.wind_2m = v[kWind];
    rec.aet_mm_day = v[kAet];
    return rec;
}

// Nearest cell to (lat, lon); the point must lie inside the grid extent.
// Ties on the midline between two centers go north, then west.
std::pair<int, int> nearest_cell(const GridHeader& h, double lat, double lon) {
    const double cs = h.cellsize;
    const double lon_hi = h.xll + h.ncols * cs;
    const double lat_hi = h.yll + h.nrows * cs;
    if (lon < h.xll || lon > lon_hi || lat < h.yll || lat > lat_hi)
        throw ValidationError("location (" + format_double(lat) + ", " + format_double(lon) +
                              ") is outside the climate grid extent");
    // Fractional index of the nearest center; a .5 tie rounds down for
    // columns (west) and up for south-based rows (north).
    const double fc = (lon - h.xll) / cs - 0.5;
    const double fr = (lat - h.yll) / cs - 0.5;
    int col = static_cast<int>(std::ceil(fc - 0.5));
    int south_row = static_cast<int>(std::floor(fr + 0.5));
    col = std::clamp(col, 0, h.ncols - 1);
    south_row = std::clamp(south_row, 0, h.nrows - 1);
    return {h.nrows - 1 - south_row, col};
}

std::string safe_name(const std::string& name) {
    std::string out = name;
    for (char& ch : out)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
    return out;
}

CsvValue opt_cell(const std::optional<double>& v) {
    if (v) return *v;
    return std::monostate{};
}

void location_run(Ctx& ctx, const CropJob& job) {
    if (job.crops.empty()) throw ValidationError("no crops requested");
    const std::vector<CropSpec> all_crops =
        run_stage("read[crops]", [&] { return read_crop_specs(job.crops_file); });
    std::vector<CropSpec> crops;
    for (const auto& name : job.crops)
        crops.push_back(run_stage("read[crops]", [&] { return find_crop(all_crops, name); }));

    const ClimateData data = load_climate(ctx, job.climate);
    const auto [row, col] =
        run_stage("locate", [&] { return nearest_cell(data.elevation.header, job.lat, job.lon); });

    SiteRecord site;
    const LatLon center = cell_center(data.elevation.header, row, col);
    site.lat = center.lat;
    site.lon = center.lon;
    site.elevation_m = data.elevation.at(row, col);
    if (data.elevation.is_nodata(site.elevation_m))
        throw ValidationError("stage locate: no elevation at the selected location");

    std::vector<ClimateRecord> records;
    for (std::size_t i = 0; i < job.climate.months.size(); ++i) {
        auto rec = record_at(data, job.climate.months[i], i, row, col);
        if (!rec)
            throw ValidationError("stage locate: climate has nodata at the selected location for " +
                                  job.climate.months[i].str());
        records.push_back(*rec);
    }

    CsvTable out;
    out.columns = {"month", "crop", "pet", "kc", "wr", "aet", "wrsi"};
    std::vector<TimeSeries> series;
    for (const auto& crop : crops) {
        const WrsiSeries s = run_stage("series[" + crop.name + "]", [&] {
            return build_wrsi_series(records, site, crop, job.cap100);
        });
        double aet_mass = 0.0, wrsi_mass = 0.0;
        TimeSeries ts{crop.name, {}};
        for (const auto& m : s.months) {
            out.rows.push_back({m.month.str(), crop.name, m.pet_mm_day, opt_cell(m.kc),
                                m.kc ? CsvValue{m.wr_mm_day} : CsvValue{std::monostate{}},
                                m.aet_mm_day, opt_cell(m.wrsi)});
            ts.values.push_back(m.wrsi);
            aet_mass += m.aet_mm_day;
            if (m.wrsi) wrsi_mass += *m.wrsi;
        }
        out.rows.push_back({std::string("seasonal"), crop.name, std::monostate{}, std::monostate{},
                            std::monostate{}, std::monostate{}, opt_cell(s.seasonal)});
        if (!s.seasonal)
            ctx.log.warn("crop '" + crop.name + "' is dormant for every requested month");
        ctx.log.step("series[" + crop.name + "]", static_cast<int>(records.size()), 6,
                     static_cast<int>(s.months.size()) + 1, 7, aet_mass, wrsi_mass);
        series.push_back(std::move(ts));
    }

    write_table(ctx, out, job.out_dir / "wrsi_location.csv");

    const fs::path plot_path = job.out_dir / ("wrsi_location." + job.plot_format);
    ctx.track(plot_path);
    const bool any_point = std::any_of(series.begin(), series.end(), [](const TimeSeries& s) {
        return std::any_of(s.values.begin(), s.values.end(),
                           [](const std::optional<double>& v) { return v.has_value(); });
    });
    run_stage("plot[wrsi_location]", [&] {
        const PlotSpec spec = plot_spec("WRSI by month", plot_path);
        if (any_point)
            emit_timeseries(job.climate.months, series, spec);
        else
            emit_blank(spec, "all crops dormant");
    });
}

void regional_run(Ctx& ctx, const CropJob& job) {
    if (job.crops.size() != 1)
        throw ValidationError("regional mode takes exactly one crop");
    const std::vector<CropSpec> all_crops =
        run_stage("read[crops]", [&] { return read_crop_specs(job.crops_file); });
    const CropSpec crop =
        run_stage("read[crops]", [&] { return find_crop(all_crops, job.crops.front()); });

    const ClimateData full = load_climate(ctx, job.climate);
    const ClimateData data = subset_climate(ctx, full, job.bbox, job.climate.months);
    const GridHeader& h = data.elevation.header;
    const std::string tag = safe_name(crop.name);

    for (std::size_t mi = 0; mi < job.climate.months.size(); ++mi) {
        const YearMonth month = job.climate.months[mi];
        const std::string label = crop.name + " " + month.str();
        const fs::path csv_path = job.out_dir / ("wrsi_" + tag + "_" + month.str() + ".csv");
        const fs::path plot_path =
            job.out_dir / ("wrsi_" + tag + "_" + month.str() + "." + job.plot_format);
        const std::string title = "WRSI " + crop.name + " " + month.str();

        CsvTable table;
        table.columns = {"lat", "lon", "wrsi"};

        const std::optional<double> kc = kc_for(crop, month.month);
        if (!kc) {
            ctx.log.warn("crop '" + crop.name + "' is dormant in " + month.str());
            write_table(ctx, table, csv_path);
            ctx.track(plot_path);
            run_stage("plot[" + label + "]",
                      [&] { emit_blank(plot_spec(title, plot_path), "dormant month"); });
            continue;
        }

        std::vector<std::optional<double>> wrsi(
            static_cast<std::size_t>(h.nrows) * static_cast<std::size_t>(h.ncols));
        run_stage("wrsi[" + label + "]", [&] {
            parallel_chunks(h.nrows, job.threads, [&](int lo, int hi) {
                for (int r = lo; r < hi; ++r) {
                    for (int c = 0; c < h.ncols; ++c) {
                        const auto rec = record_at(data, month, mi, r, c);
                        if (!rec) continue;
                        SiteRecord site;
                        const LatLon center = cell_center(h, r, c);
                        site.lat = center.lat;
                        site.lon = center.lon;
                        site.elevation_m = data.elevation.at(r, c);
                        const double pet = penman_monteith(*rec, site);
                        const double wr = water_requirement(pet, *kc);
                        wrsi[static_cast<std::size_t>(r) * h.ncols + c] =
                            wrsi_monthly(rec->aet_mm_day, wr, job.cap100);
                    }
                }
            });
        });

        std::vector<HeatCell> cells;
        double aet_mass = 0.0, wrsi_mass = 0.0;
        bool any = false;
        for (int r = 0; r < h.nrows; ++r) {
            for (int c = 0; c < h.ncols; ++c) {
                const LatLon center = cell_center(h, r, c);
                const auto& v = wrsi[static_cast<std::size_t>(r) * h.ncols + c];
                if (v) {
                    table.rows.push_back({center.lat, center.lon, *v});
                    cells.push_back({center.lat, center.lon, *v});
                    wrsi_mass += *v;
                    any = true;
                    const double aet = data.vars[kAet][mi].at(r, c);
                    aet_mass += aet;
                } else {
                    cells.push_back({center.lat, center.lon,
                                     std::numeric_limits<double>::quiet_NaN()});
                }
            }
        }
        ctx.log.step("wrsi[" + label + "]", h.nrows, h.ncols, h.nrows, h.ncols, aet_mass,
                     wrsi_mass);
        ctx.log.step("table[" + label + "]", h.nrows, h.ncols,
                     static_cast<int>(table.rows.size()), 3, wrsi_mass, wrsi_mass);

        write_table(ctx, table, csv_path);
        ctx.track(plot_path);
        run_stage("plot[" + label + "]", [&] {
            if (any)
                emit_heatmap(cells, plot_spec(title, plot_path));
            else
                emit_blank(plot_spec(title, plot_path), "no valid cells");
        });
        if (!any && table.rows.empty())
            ctx.log.warn("no valid cells for '" + crop.name + "' in " + month.str());
    }
}

} // namespace

void RunLog::step(const std::string& name, int in_rows, int in_cols, int out_rows, int out_cols,
                  double mass_in, double mass_out) {
    lines.push_back("STEP " + name + ": in=" + std::to_string(in_rows) + "x" +
                    std::to_string(in_cols) + " out=" + std::to_string(out_rows) + "x" +
                    std::to_string(out_cols) + " mass_in=" + format_double(mass_in) +
                    " mass_out=" + format_double(mass_out));
}

void RunLog::warn(const std::string& message) { lines.push_back("WARN " + message); }

std::string RunLog::text() const {
    std::string out;
    for (const auto& line : lines) {
        out += line;
        out += '\n';
    }
    return out;
}

void RunLog::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text();
    if (!out) throw IoError("failed writing " + path.string());
}

double derive_vapor_pressure(double q, double elevation_m) {
    if (!std::isfinite(q) || q < 0.0 || q > 0.05)
        throw ValidationError("specific humidity " + format_double(q) + " outside [0, 0.05]");
    const double p = atmospheric_pressure(elevation_m);
    return q * p / (0.622 + 0.378 * q);
}

RunResult run_pop_density(const PopulationJob& job) {
    Ctx ctx;
    make_dir(ctx, job.out_dir);
    return guarded(ctx, job.out_dir, [&] { density_stage(ctx, job); });
}

RunResult run_pop_demographics(const PopulationJob& job) {
    Ctx ctx;
    make_dir(ctx, job.out_dir);
    return guarded(ctx, job.out_dir, [&] {
        DemographicStore store;
        ctx.store_dir = demographics_stage(ctx, job, store);
    });
}

RunResult run_pop_agents(const std::filesystem::path& store_dir, std::uint64_t seed,
                         bool sample_ages, const std::filesystem::path& out_csv) {
    Ctx ctx;
    const fs::path parent = out_csv.parent_path().empty() ? "." : out_csv.parent_path();
    make_dir(ctx, parent);
    return guarded(ctx, parent, [&] {
        const DemographicStore store =
            run_stage("read[store]", [&] { return load_store(store_dir); });
        ctx.store_dir = store_dir;
        agents_stage(ctx, store, seed, sample_ages, out_csv);
    });
}

RunResult run_population(const PopulationJob& job) {
    Ctx ctx;
    make_dir(ctx, job.out_dir);
    return guarded(ctx, job.out_dir, [&] {
        if (!job.density_grid.empty()) density_stage(ctx, job);
        if (!job.group_grids.empty()) {
            DemographicStore store;
            ctx.store_dir = demographics_stage(ctx, job, store);
            if (job.make_roster)
                agents_stage(ctx, store, job.seed, job.sample_ages, job.out_dir / "roster.csv");
        }
    });
}

RunResult run_crop_location(const CropJob& job) {
    Ctx ctx;
    make_dir(ctx, job.out_dir);
    return guarded(ctx, job.out_dir, [&] { location_run(ctx, job); });
}

RunResult run_crop_regional(const CropJob& job) {
    Ctx ctx;
    make_dir(ctx, job.out_dir);
    return guarded(ctx, job.out_dir, [&] { regional_run(ctx, job); });
}

} // namespace simseed
