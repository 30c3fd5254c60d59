#include "simseed/config.hpp"
#include "simseed/error.hpp"
#include "simseed/evapo.hpp"
#include "simseed/fetch.hpp"
#include "simseed/numfmt.hpp"
#include "simseed/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace simseed;

namespace {

constexpr const char* kVersion = "simseed 0.1.0";

fs::path default_cache() {
    const char* env = std::getenv("SIMSEED_CACHE");
    return (env != nullptr && *env != '\0') ? fs::path(env) : fs::path("cache");
}

BoundingBox parse_bbox(const std::string& text) {
    const std::vector<std::string> parts = split_list(text);
    if (parts.size() != 4)
        throw ValidationError("--bbox expects lat_min,lat_max,lon_min,lon_max");
    BoundingBox box;
    try {
        box.lat_min = parse_double(parts[0]);
        box.lat_max = parse_double(parts[1]);
        box.lon_min = parse_double(parts[2]);
        box.lon_max = parse_double(parts[3]);
    } catch (const ParseError&) {
        throw ValidationError("--bbox expects four numbers (lat_min,lat_max,lon_min,lon_max)");
    }
    box.validate();
    return box;
}

// Either an inclusive range "YYYY-MM..YYYY-MM" or a comma list of months.
std::vector<YearMonth> parse_months(const std::string& text) {
    try {
        if (text.find("..") != std::string::npos) return expand_month_range(text);
        std::vector<YearMonth> months;
        for (const std::string& item : split_list(text)) months.push_back(parse_year_month(item));
        if (months.empty()) throw ValidationError("--months lists no months");
        return months;
    } catch (const ParseError& e) {
        throw ValidationError(std::string("--months: ") + e.what());
    }
}

std::map<std::string, std::string> parse_bindings(const std::vector<std::string>& sets) {
    std::map<std::string, std::string> out;
    for (const std::string& item : sets) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ValidationError("--set expects key=value, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

void check_plot_format(const std::string& fmt) {
    if (fmt != "svg" && fmt != "png")
        throw ValidationError("--plot-format must be svg or png, got '" + fmt + "'");
}

void check_threads(int threads) {
    if (threads < 1) throw ValidationError("--threads must be at least 1");
}

void check_decimals(int decimals) {
    if (decimals < 2 || decimals > 6)
        throw ValidationError("--decimals must lie in [2, 6], got " + std::to_string(decimals));
}

void print_result(const RunResult& result) {
    std::cout << result.log.text();
    if (!result.store_dir.empty()) std::cout << result.store_dir.string() << "\n";
    for (const fs::path& artifact : result.artifacts) std::cout << artifact.string() << "\n";
}

// Resolves the per-variable, per-month grid paths a crop run needs from a
// dataset manifest and the local cache. Manifests may rename provider
// variable tokens with `var.<name> = <token>` entries and must name their
// elevation grid unless --elevation overrides it.
ClimateBundle climate_bundle(const fs::path& manifest_path, const fs::path& cache,
                             const std::vector<YearMonth>& months, const fs::path& elevation,
                             const std::map<std::string, std::string>& bindings) {
    const DatasetManifest m = parse_manifest(manifest_path);
    std::map<std::string, std::string> values = m.defaults;
    for (const auto& [k, v] : bindings) values[k] = v;

    ClimateBundle bundle;
    bundle.months = months;
    for (const std::string& var : kClimateVariables) {
        const auto rename = values.find("var." + var);
        const std::string token = rename == values.end() ? var : rename->second;
        std::vector<fs::path>& files = bundle.files[var];
        for (const YearMonth& ym : months) {
            auto bound = values;
            bound["variable"] = token;
            bound["month"] = ym.str();
            files.push_back(cache / m.id / bind_template(m.dest_template, bound));
        }
    }
    if (!elevation.empty()) {
        bundle.elevation = elevation;
    } else {
        const auto it = values.find("elevation");
        if (it == values.end())
            throw ValidationError("climate manifest '" + m.id +
                                  "' names no elevation grid; pass --elevation");
        bundle.elevation = cache / m.id / it->second;
    }
    return bundle;
}

int do_fetch(const fs::path& manifest_path, const std::vector<std::string>& sets, bool offline,
             const fs::path& cache, const fs::path& fixtures) {
    const DatasetManifest manifest = parse_manifest(manifest_path);

    if (offline) {
        const FixtureSet fixture = offline_fixture(manifest.id, fixtures);
        const fs::path dir = cache / manifest.id;
        for (const fs::path& file : fixture.files) {
            const fs::path rel = fs::relative(file, fixture.dir);
            const fs::path target = dir / rel;
            fs::create_directories(target.parent_path());
            fs::copy_file(file, target, fs::copy_options::overwrite_existing);
            std::cout << "FETCH " << rel.string() << ": staged ("
                      << format_int(static_cast<long long>(fs::file_size(target))) << " bytes)\n";
        }
        std::cout << dir.string() << "\n";
        return 0;
    }

    const FetchReport report = fetch(manifest, parse_bindings(sets), cache);
    for (const std::string& warning : report.warnings)
        std::cerr << "warning: " << warning << "\n";
    for (const FileReport& file : report.files) {
        std::cout << "FETCH " << file.dest << ": " << to_string(file.status) << " ("
                  << format_int(static_cast<long long>(file.bytes)) << " bytes)\n";
        if (file.status == FileStatus::Failed)
            std::cerr << "error: " << file.dest << ": " << file.error << "\n";
    }
    std::cout << (cache / manifest.id).string() << "\n";
    return report.all_ok() ? 0 : 3;
}

struct PopDemogArgs {
    std::string manifest, bbox;
    int decimals = 0;
    std::string out;
    bool keep_zeros = false;
    std::string density;
    std::vector<std::string> sets;
    std::string cache;
    std::string plot_format = "svg";
    int threads = 1;
};

int do_pop_demog(const PopDemogArgs& a) {
    check_plot_format(a.plot_format);
    check_threads(a.threads);
    check_decimals(a.decimals);
    const DatasetManifest m = parse_manifest(a.manifest);
    if (m.genders.empty() || m.brackets.empty())
        throw ValidationError("--manifest: '" + m.id +
                              "' lists no genders/brackets, nothing to assemble");

    std::map<std::string, std::string> values = m.defaults;
    for (const auto& [k, v] : parse_bindings(a.sets)) values[k] = v;

    PopulationJob job;
    job.meta.bbox = parse_bbox(a.bbox);
    job.meta.decimals = a.decimals;
    job.meta.genders = m.genders;
    job.meta.brackets = m.brackets;
    job.meta.country = values.count("country") ? values.at("country") : m.id;
    if (values.count("year")) {
        try {
            job.meta.year = static_cast<int>(parse_int(values.at("year")));
        } catch (const ParseError&) {
            throw ValidationError("manifest 'year' is not an integer");
        }
    }
    const fs::path dir = fs::path(a.cache) / m.id;
    for (const std::string& gender : m.genders) {
        for (const BracketDef& bracket : m.brackets) {
            auto bound = values;
            bound["gender"] = gender;
            bound["bracket"] = bracket.label;
            job.group_grids.emplace_back(DemographicKey{gender, bracket.label},
                                         dir / bind_template(m.dest_template, bound));
        }
    }
    job.density_grid = a.density;
    job.keep_zeros = a.keep_zeros;
    job.make_roster = false;
    job.out_dir = a.out;
    job.plot_format = a.plot_format;
    job.threads = a.threads;
    print_result(run_pop_demographics(job));
    return 0;
}

struct CropArgs {
    double lat = 0.0, lon = 0.0;
    std::string bbox;
    std::string crops; // location: comma list; regional: single name
    std::string months;
    std::string out;
    bool cap100 = false;
    std::string climate, crops_file, elevation;
    std::vector<std::string> sets;
    std::string cache;
    std::string plot_format = "svg";
    int threads = 1;
};

CropJob make_crop_job(const CropArgs& a) {
    check_plot_format(a.plot_format);
    check_threads(a.threads);
    CropJob job;
    job.climate = climate_bundle(a.climate, a.cache, parse_months(a.months), a.elevation,
                                 parse_bindings(a.sets));
    job.crops_file = a.crops_file;
    job.crops = split_list(a.crops);
    if (job.crops.empty()) throw ValidationError("no crop names given");
    job.lat = a.lat;
    job.lon = a.lon;
    job.cap100 = a.cap100;
    job.out_dir = a.out;
    job.plot_format = a.plot_format;
    job.threads = a.threads;
    return job;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic population and crop-water inputs for simulations"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    int rc = 0;

    const std::string cache_default = default_cache().string();

    // fetch ---------------------------------------------------------------
    auto* fetch_cmd = app.add_subcommand("fetch", "download a dataset manifest into the cache");
    {
        struct Args {
            std::string manifest, cache, fixtures = "fixtures";
            std::vector<std::string> sets;
            bool offline = false;
        };
        auto a = std::make_shared<Args>();
        a->cache = cache_default;
        fetch_cmd->add_option("--manifest", a->manifest, "dataset manifest file")->required();
        fetch_cmd->add_option("--set", a->sets, "override a manifest binding (k=v)");
        fetch_cmd->add_flag("--offline", a->offline,
                            "stage the bundled fixture instead of downloading");
        fetch_cmd->add_option("--cache", a->cache, "cache directory");
        fetch_cmd->add_option("--fixtures", a->fixtures, "fixture root for --offline");
        fetch_cmd->callback(
            [a, &rc] { rc = do_fetch(a->manifest, a->sets, a->offline, a->cache, a->fixtures); });
    }

    // pop -----------------------------------------------------------------
    auto* pop = app.add_subcommand("pop", "population synthesis stages");
    pop->require_subcommand(1);

    auto* density = pop->add_subcommand("density", "subset, coarsen and integerize one grid");
    {
        struct Args {
            std::string input, bbox, out, plot_format = "svg";
            int decimals = 0, threads = 1;
            bool keep_zeros = false;
        };
        auto a = std::make_shared<Args>();
        density->add_option("--input", a->input, "population density grid (.asc)")->required();
        density->add_option("--bbox", a->bbox, "lat_min,lat_max,lon_min,lon_max")->required();
        density->add_option("--decimals", a->decimals, "target cell size 10^-N degrees")
            ->required();
        density->add_option("--out", a->out, "output directory")->required();
        density->add_flag("--keep-zeros", a->keep_zeros, "keep zero-count cells in the table");
        density->add_option("--plot-format", a->plot_format, "svg or png");
        density->add_option("--threads", a->threads, "worker thread cap");
        density->callback([a] {
            check_plot_format(a->plot_format);
            check_threads(a->threads);
            check_decimals(a->decimals);
            PopulationJob job;
            job.density_grid = a->input;
            job.meta.bbox = parse_bbox(a->bbox);
            job.meta.decimals = a->decimals;
            job.keep_zeros = a->keep_zeros;
            job.out_dir = a->out;
            job.plot_format = a->plot_format;
            job.threads = a->threads;
            print_result(run_pop_density(job));
        });
    }

    auto* demog = pop->add_subcommand("demog", "assemble the demographic population store");
    {
        auto a = std::make_shared<PopDemogArgs>();
        a->cache = cache_default;
        demog->add_option("--manifest", a->manifest, "dataset manifest file")->required();
        demog->add_option("--bbox", a->bbox, "lat_min,lat_max,lon_min,lon_max")->required();
        demog->add_option("--decimals", a->decimals, "target cell size 10^-N degrees")
            ->required();
        demog->add_option("--out", a->out, "output directory")->required();
        demog->add_flag("--keep-zeros", a->keep_zeros, "keep zero-count cells in the tables");
        demog->add_option("--density", a->density,
                          "density grid for the store's total table (optional)");
        demog->add_option("--set", a->sets, "override a manifest binding (k=v)");
        demog->add_option("--cache", a->cache, "cache directory holding the fetched grids");
        demog->add_option("--plot-format", a->plot_format, "svg or png");
        demog->add_option("--threads", a->threads, "worker thread cap");
        demog->callback([a] { do_pop_demog(*a); });
    }

    auto* agents = pop->add_subcommand("agents", "expand a population store into an agent roster");
    {
        struct Args {
            std::string store, out;
            std::uint64_t seed = 0;
            bool sample_ages = false;
        };
        auto a = std::make_shared<Args>();
        agents->add_option("--store", a->store, "population store directory")->required();
        agents->add_option("--seed", a->seed, "deterministic roster seed")->required();
        agents->add_flag("--sample-ages", a->sample_ages, "sample an age inside each bracket");
        agents->add_option("--out", a->out, "roster CSV path")->required();
        agents->callback(
            [a] { print_result(run_pop_agents(a->store, a->seed, a->sample_ages, a->out)); });
    }

    // crop ----------------------------------------------------------------
    auto* crop = app.add_subcommand("crop", "water requirement satisfaction pipelines");
    crop->require_subcommand(1);

    auto add_crop_common = [&](CLI::App* cmd, std::shared_ptr<CropArgs> a) {
        cmd->add_option("--months", a->months, "YYYY-MM..YYYY-MM or a comma list")->required();
        cmd->add_option("--out", a->out, "output directory")->required();
        cmd->add_flag("--cap-100", a->cap100, "clamp index values at 100");
        cmd->add_option("--climate", a->climate, "climate dataset manifest")->required();
        cmd->add_option("--crops-file", a->crops_file, "crop coefficient table (CSV)")
            ->required();
        cmd->add_option("--elevation", a->elevation, "elevation grid overriding the manifest");
        cmd->add_option("--set", a->sets, "override a manifest binding (k=v)");
        cmd->add_option("--cache", a->cache, "cache directory holding the fetched grids");
        cmd->add_option("--plot-format", a->plot_format, "svg or png");
        cmd->add_option("--threads", a->threads, "worker thread cap");
    };

    auto* location = crop->add_subcommand("location", "monthly index series at one point");
    {
        auto a = std::make_shared<CropArgs>();
        a->cache = cache_default;
        location->add_option("--lat", a->lat, "site latitude (degrees)")->required();
        location->add_option("--lon", a->lon, "site longitude (degrees)")->required();
        location->add_option("--crops", a->crops, "comma list of crop names")->required();
        add_crop_common(location, a);
        location->callback([a] { print_result(run_crop_location(make_crop_job(*a))); });
    }

    auto* regional = crop->add_subcommand("regional", "per-cell monthly index grids");
    {
        auto a = std::make_shared<CropArgs>();
        a->cache = cache_default;
        regional->add_option("--bbox", a->bbox, "lat_min,lat_max,lon_min,lon_max")->required();
        regional->add_option("--crop", a->crops, "crop name")->required();
        add_crop_common(regional, a);
        regional->callback([a] {
            CropJob job = make_crop_job(*a);
            job.bbox = parse_bbox(a->bbox);
            print_result(run_crop_regional(job));
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const simseed::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NetworkError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return rc;
}
