#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace simseed {

// Calendar month. Comparable and incrementable so month ranges are easy to
// walk; days_in_month is leap-aware (Gregorian rules).
struct YearMonth {
    int year = 0;
    int month = 1; // 1..12

    auto operator<=>(const YearMonth&) const = default;

    YearMonth next() const;
    int days() const;
    std::string str() const; // "YYYY-MM"
};

YearMonth parse_year_month(const std::string& token);

// Expands "YYYY-MM..YYYY-MM" (inclusive) into the month sequence.
std::vector<YearMonth> expand_month_range(const std::string& token);

// One month of climate forcing for a single cell. net_lw is positive
// outgoing and gets subtracted from net_sw. ea is actual vapor pressure,
// already converted from the source humidity variable.
struct ClimateRecord {
    YearMonth year_month;
    double tair_c = 0.0;      // air temperature, degC
    double ea_kpa = 0.0;      // actual vapor pressure, kPa
    double net_sw = 0.0;      // net shortwave radiation, MJ m^-2 day^-1
    double net_lw = 0.0;      // net longwave radiation, MJ m^-2 day^-1
    double wind_2m = 0.0;     // wind speed at 2 m, m s^-1
    double aet_mm_day = 0.0;  // actual evapotranspiration, mm day^-1

    void validate() const;
};

struct SiteRecord {
    double lat = 0.0;
    double lon = 0.0;
    double elevation_m = 0.0;

    void validate() const;
};

// Crop coefficients plus a month-resolution growing calendar. The season
// starts at planting_month and runs months_init + months_dev + months_mid +
// months_late consecutive calendar months (wrapping over new year).
struct CropSpec {
    std::string name;
    double kc_init = 0.0;
    double kc_mid = 0.0;
    double kc_end = 0.0;
    int planting_month = 1; // 1..12
    int months_init = 1;
    int months_dev = 0;
    int months_mid = 1;
    int months_late = 0;

    int season_months() const {
        return months_init + months_dev + months_mid + months_late;
    }
    void validate() const;
};

// Saturation vapor pressure (kPa) at air temperature t_c.
double sat_vapor_pressure(double t_c);

// Slope of the saturation vapor pressure curve (kPa / degC).
double slope_svp(double t_c);

// Atmospheric pressure (kPa) at elevation z.
double atmospheric_pressure(double elevation_m);

// Psychrometric constant (kPa / degC) at elevation z.
double psychrometric_const(double elevation_m);

// Reference-crop potential evapotranspiration (mm/day), monthly step
// (soil heat flux taken as zero). Supersaturated inputs clamp the vapor
// pressure deficit to zero; the result is floored at zero.
double penman_monteith(const ClimateRecord& c, const SiteRecord& s);

// Crop coefficient for a calendar month (1..12). Initial and mid stages
// are constant; development and late stages interpolate linearly between
// the anchor coefficients, evaluated at each month's midpoint. Months
// outside the growing season return nullopt (dormant).
std::optional<double> kc_for(const CropSpec& crop, int calendar_month);

// Continuous stage schedule evaluated at fraction f in [0, 1] of the way
// through the development (stage = 1) or late (stage = 3) ramp; exposes the
// interpolant so boundary behavior is testable.
double kc_ramp(const CropSpec& crop, int stage, double f);

double water_requirement(double pet_mm_day, double kc);

// 100 * aet / wr. wr == 0 is a declared degenerate case and yields nullopt
// (nodata), not an error. With cap the result is clamped to 100.
std::optional<double> wrsi_monthly(double aet_mm_day, double wr_mm_day, bool cap = false);

struct MonthlyWater {
    YearMonth month;
    double aet_mm_day = 0.0;
    double wr_mm_day = 0.0;
};

// Day-weighted seasonal index: 100 * sum(aet*days) / sum(wr*days). Throws
// on an empty season; an all-zero water requirement yields nullopt.
std::optional<double> wrsi_seasonal(std::span<const MonthlyWater> season, bool cap = false);

struct WrsiMonth {
    YearMonth month;
    double pet_mm_day = 0.0;
    std::optional<double> kc;   // nullopt while dormant
    double wr_mm_day = 0.0;     // 0 while dormant
    double aet_mm_day = 0.0;
    std::optional<double> wrsi; // nullopt while dormant or wr == 0
};

struct WrsiSeries {
    std::vector<WrsiMonth> months;
    std::optional<double> seasonal; // over all in-season months in the span
};

// Full per-month series for one crop at one site: PET via penman_monteith,
// Kc from the calendar, WR = PET * Kc, monthly and seasonal WRSI. Records
// must be sorted by month.
WrsiSeries build_wrsi_series(std::span<const ClimateRecord> records, const SiteRecord& site,
                             const CropSpec& crop, bool cap = false);

// Crop definitions CSV: name, kc_init, kc_mid, kc_end, planting_month,
// months_init, months_dev, months_mid, months_late.
std::vector<CropSpec> read_crop_specs(const std::filesystem::path& path);
const CropSpec& find_crop(std::span<const CropSpec> crops, const std::string& name);

} // namespace simseed
