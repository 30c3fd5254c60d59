#include "simseed/popsynth.hpp"

#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>

namespace simseed {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr long long kDecimalScale[] = {1, 10, 100, 1000, 10000, 100000, 1000000};

// Quantizes the cell-center ordinate (base + index + 0.5) * 10^-decimals to
// `decimals` places, rounding halves away from zero. The doubled numerator
// 2 * (base + index) + 1 is an exact odd integer, so the rounding decision
// is taken in integer arithmetic and the result is the closest double to an
// exact multiple of 10^-decimals.
double quantize_center(long long base, long long index, long long scale) {
    const long long doubled = 2 * (base + index) + 1;
    const long long idx = doubled > 0 ? (doubled + 1) / 2 : (doubled - 1) / 2;
    return static_cast<double>(idx) / static_cast<double>(scale);
}

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based mix: feeding each coordinate through splitmix64 keeps draws
// independent of iteration order and thread count.
uint64_t mix(uint64_t seed, uint64_t a, uint64_t b, uint64_t c) {
    uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

json bbox_json(const BoundingBox& b) {
    return json{{"lat_min", b.lat_min},
                {"lat_max", b.lat_max},
                {"lon_min", b.lon_min},
                {"lon_max", b.lon_max}};
}

BoundingBox bbox_from_json(const json& j) {
    BoundingBox b;
    b.lat_min = j.at("lat_min").get<double>();
    b.lat_max = j.at("lat_max").get<double>();
    b.lon_min = j.at("lon_min").get<double>();
    b.lon_max = j.at("lon_max").get<double>();
    return b;
}

PopulationTable table_from_csv(const fs::path& file) {
    RawCsv raw = read_table_csv_file(file);
    PopulationTable table;
    const std::size_t lat = raw.column("lat");
    const std::size_t lon = raw.column("lon");
    const std::size_t mx = raw.column("merc_x");
    const std::size_t my = raw.column("merc_y");
    const std::size_t cnt = raw.column("count");
    table.rows.reserve(raw.rows.size());
    for (std::size_t i = 0; i < raw.rows.size(); ++i) {
        const auto& r = raw.rows[i];
        PopulationRow row;
        row.lat = parse_double(r[lat]);
        row.lon = parse_double(r[lon]);
        row.merc_x = parse_double(r[mx]);
        row.merc_y = parse_double(r[my]);
        row.count = parse_int(r[cnt]);
        if (row.count < 0)
            throw ValidationError("population table " + file.string() + ": negative count");
        table.rows.push_back(row);
    }
    return table;
}

} // namespace

long long PopulationTable::total() const {
    long long sum = 0;
    for (const auto& r : rows) sum += r.count;
    return sum;
}

const BracketDef& StoreMeta::bracket(const std::string& label) const {
    for (const auto& b : brackets)
        if (b.label == label) return b;
    throw ValidationError("unknown age bracket '" + label + "'");
}

const PopulationTable* DemographicStore::find(const DemographicKey& key) const {
    for (const auto& [k, table] : groups)
        if (k == key) return &table;
    return nullptr;
}

std::vector<long long> apportion_counts(std::span<const std::pair<long long, double>> cells) {
    const std::size_t n = cells.size();
    std::vector<std::size_t> by_identity(n);
    std::iota(by_identity.begin(), by_identity.end(), 0);
    std::sort(by_identity.begin(), by_identity.end(),
              [&](std::size_t a, std::size_t b) { return cells[a].first < cells[b].first; });
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (cells[by_identity[i]].first == cells[by_identity[i + 1]].first)
            throw ValidationError("apportion_counts: duplicate cell identity " +
                                  format_int(cells[by_identity[i]].first));

    // The target is fixed by summing in identity order, so any permutation of
    // the input reproduces it bit for bit.
    double sum = 0.0;
    for (std::size_t i : by_identity) {
        const double v = cells[i].second;
        if (!std::isfinite(v) || v < 0.0)
            throw ValidationError("apportion_counts: values must be finite and non-negative");
        sum += v;
    }
    const long long target = round_half_even(sum);

    std::vector<long long> counts(n);
    std::vector<double> frac(n);
    long long floor_sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = std::floor(cells[i].second);
        counts[i] = static_cast<long long>(f);
        frac[i] = cells[i].second - f;
        floor_sum += counts[i];
    }
    long long deficit = target - floor_sum;
    if (deficit < 0)
        throw InternalError("apportion_counts: floor sum exceeds rounded total");

    // Total order over cells: value descending, then fractional part
    // descending, then identity ascending.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (cells[a].second != cells[b].second) return cells[a].second > cells[b].second;
        if (frac[a] != frac[b]) return frac[a] > frac[b];
        return cells[a].first < cells[b].first;
    });

    for (std::size_t i : order) {
        if (deficit == 0) break;
        if (frac[i] > 0.0) {
            ++counts[i];
            --deficit;
        }
    }
    if (deficit > 0) {
        // More whole persons to place than cells with a fractional part;
        // spill to the remaining cells in the same order.
        for (std::size_t i : order) {
            if (deficit == 0) break;
            if (frac[i] <= 0.0) {
                ++counts[i];
                --deficit;
            }
        }
    }
    if (deficit != 0)
        throw InternalError("apportion_counts: could not place " + format_int(deficit) +
                            " remaining units");
    return counts;
}

Raster integerize(const Raster& r) {
    r.validate();
    std::vector<std::pair<long long, double>> cells;
    cells.reserve(r.values.size());
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        const double v = r.values[i];
        if (v == r.header.nodata) continue;
        if (v < 0.0)
            throw ValidationError("integerize: negative cell value " + format_double(v));
        cells.emplace_back(static_cast<long long>(i), v);
    }
    const std::vector<long long> counts = apportion_counts(cells);
    Raster out;
    out.header = r.header;
    out.values.assign(r.values.size(), r.header.nodata);
    for (std::size_t j = 0; j < cells.size(); ++j)
        out.values[static_cast<std::size_t>(cells[j].first)] = static_cast<double>(counts[j]);
    return out;
}

PopulationTable make_population_table(const Raster& r, int decimals, bool keep_zeros) {
    r.validate();
    if (decimals < 2 || decimals > 6)
        throw ValidationError("make_population_table: decimals must be in [2, 6]");
    const long long scale = kDecimalScale[decimals];
    const double target = 1.0 / static_cast<double>(scale);
    if (std::abs(r.header.cellsize - target) > target * 1e-9)
        throw ValidationError(
            "make_population_table: raster cellsize must be 10^-decimals (coarsen first)");

    // Grid origin in units of the cellsize; coarsen snaps origins to exact
    // multiples, so these round cleanly.
    const long long kx = std::llround(r.header.xll * static_cast<double>(scale));
    const long long ky = std::llround(r.header.yll * static_cast<double>(scale));

    PopulationTable table;
    for (int row = 0; row < r.header.nrows; ++row) {
        for (int col = 0; col < r.header.ncols; ++col) {
            const double v = r.at(row, col);
            if (r.is_nodata(v)) continue;
            if (v < 0.0 || v != std::floor(v))
                throw ValidationError("make_population_table: cell (" + std::to_string(row) + ", " +
                                      std::to_string(col) + ") is not a non-negative integer");
            const long long count = static_cast<long long>(v);
            if (count == 0 && !keep_zeros) continue;
            PopulationRow out;
            out.lon = quantize_center(kx, col, scale);
            out.lat = quantize_center(ky, r.header.nrows - 1 - row, scale);
            const MercatorPoint m = to_web_mercator(out.lat, out.lon);
            out.merc_x = m.x;
            out.merc_y = m.y;
            out.count = count;
            table.rows.push_back(out);
        }
    }
    // Iteration above is north-to-south, west-to-east, which is already the
    // canonical row order.
    return table;
}

DemographicStore build_demographics(const std::vector<std::pair<DemographicKey, Raster>>& groups,
                                    const StoreMeta& meta, bool keep_zeros, int threads,
                                    const StageObserver& observer) {
    if (meta.genders.empty() || meta.brackets.empty())
        throw ValidationError("build_demographics: empty gender or bracket list");
    meta.bbox.validate();
    const std::size_t expected = meta.genders.size() * meta.brackets.size();
    if (groups.size() != expected)
        throw ValidationError("build_demographics: got " + std::to_string(groups.size()) +
                              " group rasters, expected " + std::to_string(expected));
    const GridHeader& ref = groups.front().second.header;
    for (const auto& [key, raster] : groups) {
        const GridHeader& h = raster.header;
        if (h.ncols != ref.ncols || h.nrows != ref.nrows || h.xll != ref.xll || h.yll != ref.yll ||
            h.cellsize != ref.cellsize)
            throw ValidationError("build_demographics: group '" + key.file_stem() +
                                  "' does not share the common grid geometry");
    }

    auto find_input = [&](const DemographicKey& key) -> const Raster& {
        for (const auto& [k, raster] : groups)
            if (k == key) return raster;
        throw ValidationError("build_demographics: missing group '" + key.file_stem() + "'");
    };

    DemographicStore store;
    store.meta = meta;
    // Groups run serially in manifest order so observers see a stable
    // sequence; the coarsening inner loop carries the parallelism.
    for (const auto& gender : meta.genders) {
        for (const auto& bracket : meta.brackets) {
            const DemographicKey key{gender, bracket.label};
            const Raster& source = find_input(key);
            Raster cut = subset(source, meta.bbox);
            if (observer) observer(key.file_stem(), "subset", source, cut);
            Raster coarse = coarsen(cut, meta.decimals, threads);
            if (observer) observer(key.file_stem(), "coarsen", cut, coarse);
            Raster counts = integerize(coarse);
            if (observer) observer(key.file_stem(), "integerize", coarse, counts);
            store.groups.emplace_back(key,
                                      make_population_table(counts, meta.decimals, keep_zeros));
        }
    }
    return store;
}

std::vector<AgentRecord> spawn_agents(const DemographicStore& store, std::uint64_t seed,
                                      bool sample_ages) {
    std::vector<AgentRecord> roster;
    long long next_id = 0;
    for (std::size_t g = 0; g < store.groups.size(); ++g) {
        const auto& [key, table] = store.groups[g];
        int year_lo = 0;
        int year_hi = 0;
        if (sample_ages) {
            const BracketDef& b = store.meta.bracket(key.bracket);
            if (b.year_hi < b.year_lo)
                throw ValidationError("bracket '" + b.label + "' has an empty year range");
            year_lo = b.year_lo;
            year_hi = b.year_hi;
        }
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const PopulationRow& row = table.rows[r];
            for (long long c = 0; c < row.count; ++c) {
                AgentRecord a;
                a.agent_id = next_id++;
                a.gender = key.gender;
                a.bracket = key.bracket;
                if (sample_ages) {
                    const uint64_t h = mix(seed, g, r, static_cast<uint64_t>(c));
                    const uint64_t span = static_cast<uint64_t>(year_hi - year_lo) + 1;
                    a.age_years = year_lo + static_cast<int>(h % span);
                }
                a.lat = row.lat;
                a.lon = row.lon;
                roster.push_back(std::move(a));
            }
        }
    }
    return roster;
}

std::vector<PyramidRow> pyramid(const DemographicStore& store) {
    std::vector<PyramidRow> rows;
    rows.reserve(store.groups.size());
    for (const auto& [key, table] : store.groups)
        rows.push_back({key.gender, key.bracket, table.total()});
    return rows;
}

ConsistencyReport consistency_report(const DemographicStore& store, const PopulationTable& total) {
    std::map<std::pair<double, double>, long long> sums;
    for (const auto& [key, table] : store.groups)
        for (const auto& row : table.rows) sums[{row.lat, row.lon}] += row.count;

    std::map<std::pair<double, double>, long long> totals;
    for (const auto& row : total.rows) totals[{row.lat, row.lon}] += row.count;

    if (!sums.empty() && !totals.empty()) {
        bool overlap = false;
        for (const auto& [coord, count] : totals)
            if (sums.count(coord)) {
                overlap = true;
                break;
            }
        if (!overlap)
            throw ValidationError(
                "consistency_report: store and total tables cover disjoint cells");
    }

    std::map<std::pair<double, double>, long long> diff = sums;
    for (const auto& [coord, count] : totals) diff[coord] -= count;

    ConsistencyReport rep;
    rep.cells = diff.size();
    long long abs_sum = 0;
    for (const auto& [coord, d] : diff) {
        const long long a = d < 0 ? -d : d;
        rep.max_abs = std::max(rep.max_abs, a);
        abs_sum += a;
    }
    rep.mean_abs = diff.empty() ? 0.0 : static_cast<double>(abs_sum) / static_cast<double>(diff.size());
    return rep;
}

CsvTable population_csv(const PopulationTable& table) {
    CsvTable out;
    out.columns = {"lat", "lon", "merc_x", "merc_y", "count"};
    out.rows.reserve(table.rows.size());
    for (const auto& r : table.rows)
        out.rows.push_back({r.lat, r.lon, r.merc_x, r.merc_y, r.count});
    return out;
}

CsvTable roster_csv(std::span<const AgentRecord> roster) {
    CsvTable out;
    out.columns = {"agent_id", "gender", "bracket", "age_years", "lat", "lon"};
    out.rows.reserve(roster.size());
    for (const auto& a : roster) {
        CsvValue age = a.age_years ? CsvValue{static_cast<long long>(*a.age_years)}
                                   : CsvValue{std::monostate{}};
        out.rows.push_back({a.agent_id, a.gender, a.bracket, age, a.lat, a.lon});
    }
    return out;
}

CsvTable pyramid_csv(std::span<const PyramidRow> rows) {
    CsvTable out;
    out.columns = {"gender", "bracket", "count"};
    out.rows.reserve(rows.size());
    for (const auto& r : rows) out.rows.push_back({r.gender, r.bracket, r.count});
    return out;
}

void save_store(const DemographicStore& store, const std::filesystem::path& dir) {
    std::error_code ec;
    fs::create_directories(dir / "groups", ec);
    if (ec) throw IoError("cannot create " + (dir / "groups").string() + ": " + ec.message());

    json manifest;
    manifest["country"] = store.meta.country;
    manifest["year"] = store.meta.year;
    manifest["decimals"] = store.meta.decimals;
    manifest["bbox"] = bbox_json(store.meta.bbox);
    manifest["genders"] = store.meta.genders;
    json brackets = json::array();
    for (const auto& b : store.meta.brackets)
        brackets.push_back({{"label", b.label}, {"year_lo", b.year_lo}, {"year_hi", b.year_hi}});
    manifest["brackets"] = brackets;
    json groups = json::array();
    for (const auto& [key, table] : store.groups) {
        const std::string file = "groups/" + key.file_stem() + ".csv";
        groups.push_back({{"gender", key.gender}, {"bracket", key.bracket}, {"file", file}});
        write_table_csv_file(population_csv(table), dir / file);
    }
    manifest["groups"] = groups;
    if (store.total) {
        manifest["total_file"] = "total.csv";
        write_table_csv_file(population_csv(*store.total), dir / "total.csv");
    }

    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
    out << manifest.dump(2) << "\n";
    if (!out) throw IoError("failed writing " + (dir / "manifest.json").string());
}

DemographicStore load_store(const std::filesystem::path& dir) {
    const fs::path manifest_path = dir / "manifest.json";
    std::ifstream in(manifest_path);
    if (!in) throw IoError("cannot open " + manifest_path.string());
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    }

    DemographicStore store;
    try {
        store.meta.country = manifest.at("country").get<std::string>();
        store.meta.year = manifest.at("year").get<int>();
        store.meta.decimals = manifest.at("decimals").get<int>();
        store.meta.bbox = bbox_from_json(manifest.at("bbox"));
        store.meta.genders = manifest.at("genders").get<std::vector<std::string>>();
        for (const auto& b : manifest.at("brackets")) {
            BracketDef def;
            def.label = b.at("label").get<std::string>();
            def.year_lo = b.at("year_lo").get<int>();
            def.year_hi = b.at("year_hi").get<int>();
            store.meta.brackets.push_back(def);
        }
        for (const auto& g : manifest.at("groups")) {
            DemographicKey key{g.at("gender").get<std::string>(),
                               g.at("bracket").get<std::string>()};
            store.groups.emplace_back(key, table_from_csv(dir / g.at("file").get<std::string>()));
        }
        if (manifest.contains("total_file"))
            store.total = table_from_csv(dir / manifest.at("total_file").get<std::string>());
    } catch (const json::exception& e) {
        throw ParseError(manifest_path.string() + ": " + e.what());
    }

    const std::size_t expected = store.meta.genders.size() * store.meta.brackets.size();
    if (store.groups.size() != expected)
        throw ValidationError(manifest_path.string() + ": expected " + std::to_string(expected) +
                              " groups, found " + std::to_string(store.groups.size()));
    return store;
}

} // namespace simseed
