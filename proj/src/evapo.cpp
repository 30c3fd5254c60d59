#include "simseed/evapo.hpp"

#include "simseed/csv.hpp"
#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace simseed {
namespace {

bool is_leap(int year) {
    return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v))
        throw ValidationError(std::string(what) + " must be finite");
}

} // namespace

YearMonth YearMonth::next() const {
    return month == 12 ? YearMonth{year + 1, 1} : YearMonth{year, month + 1};
}

int YearMonth::days() const {
    static const int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (month == 2 && is_leap(year)) return 29;
    return kDays[month - 1];
}

std::string YearMonth::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
    return buf;
}

YearMonth parse_year_month(const std::string& token) {
    if (token.size() != 7 || token[4] != '-')
        throw ParseError("month '" + token + "' is not of the form YYYY-MM");
    YearMonth ym;
    ym.year = static_cast<int>(parse_int(token.substr(0, 4)));
    ym.month = static_cast<int>(parse_int(token.substr(5, 2)));
    if (ym.month < 1 || ym.month > 12)
        throw ParseError("month '" + token + "' is out of range");
    return ym;
}

std::vector<YearMonth> expand_month_range(const std::string& token) {
    const std::size_t pos = token.find("..");
    if (pos == std::string::npos)
        return {parse_year_month(token)};
    const YearMonth first = parse_year_month(token.substr(0, pos));
    const YearMonth last = parse_year_month(token.substr(pos + 2));
    if (last < first)
        throw ValidationError("month range '" + token + "' runs backwards");
    std::vector<YearMonth> out;
    for (YearMonth m = first;; m = m.next()) {
        out.push_back(m);
        if (m == last) break;
    }
    return out;
}

void ClimateRecord::validate() const {
    require_finite(tair_c, "tair_c");
    require_finite(ea_kpa, "ea_kpa");
    require_finite(net_sw, "net_sw");
    require_finite(net_lw, "net_lw");
    require_finite(wind_2m, "wind_2m");
    require_finite(aet_mm_day, "aet_mm_day");
    if (tair_c < -60.0 || tair_c > 60.0)
        throw ValidationError("tair_c " + format_double(tair_c) + " outside [-60, 60]");
    if (ea_kpa < 0.0) throw ValidationError("ea_kpa must be >= 0");
    if (wind_2m < 0.0) throw ValidationError("wind_2m must be >= 0");
    if (aet_mm_day < 0.0) throw ValidationError("aet_mm_day must be >= 0");
    if (year_month.month < 1 || year_month.month > 12)
        throw ValidationError("year_month out of range");
}

void SiteRecord::validate() const {
    require_finite(lat, "lat");
    require_finite(lon, "lon");
    require_finite(elevation_m, "elevation_m");
    if (elevation_m < -430.0 || elevation_m > 9000.0)
        throw ValidationError("elevation_m " + format_double(elevation_m) +
                              " outside [-430, 9000]");
}

void CropSpec::validate() const {
    if (name.empty()) throw ValidationError("crop name is empty");
    if (kc_init <= 0.0 || kc_mid <= 0.0 || kc_end <= 0.0)
        throw ValidationError("crop '" + name + "': Kc values must be positive");
    if (planting_month < 1 || planting_month > 12)
        throw ValidationError("crop '" + name + "': planting_month must be in [1, 12]");
    if (months_init < 1 || months_mid < 1)
        throw ValidationError("crop '" + name + "': initial and mid stages need >= 1 month");
    if (months_dev < 0 || months_late < 0)
        throw ValidationError("crop '" + name + "': stage month counts must be >= 0");
    if (season_months() > 12)
        throw ValidationError("crop '" + name + "': season exceeds 12 months");
}

double sat_vapor_pressure(double t_c) {
    return 0.6108 * std::exp(17.27 * t_c / (t_c + 237.3));
}

double slope_svp(double t_c) {
    const double denom = t_c + 237.3;
    return 4098.0 * sat_vapor_pressure(t_c) / (denom * denom);
}

double atmospheric_pressure(double elevation_m) {
    return 101.3 * std::pow((293.0 - 0.0065 * elevation_m) / 293.0, 5.26);
}

double psychrometric_const(double elevation_m) {
    return 0.000665 * atmospheric_pressure(elevation_m);
}

double penman_monteith(const ClimateRecord& c, const SiteRecord& s) {
    c.validate();
    s.validate();
    const double rn = c.net_sw - c.net_lw; // net radiation; G = 0 at monthly step
    const double delta = slope_svp(c.tair_c);
    const double gamma = psychrometric_const(s.elevation_m);
    const double deficit = std::max(sat_vapor_pressure(c.tair_c) - c.ea_kpa, 0.0);
    const double numer = 0.408 * delta * rn +
                         gamma * (900.0 / (c.tair_c + 273.0)) * c.wind_2m * deficit;
    const double denom = delta + gamma * (1.0 + 0.34 * c.wind_2m);
    return std::max(numer / denom, 0.0);
}

double kc_ramp(const CropSpec& crop, int stage, double f) {
    if (stage == 1) return crop.kc_init + (crop.kc_mid - crop.kc_init) * f;
    if (stage == 3) return crop.kc_mid + (crop.kc_end - crop.kc_mid) * f;
    throw ValidationError("kc_ramp: stage must be 1 (development) or 3 (late)");
}

std::optional<double> kc_for(const CropSpec& crop, int calendar_month) {
    crop.validate();
    if (calendar_month < 1 || calendar_month > 12)
        throw ValidationError("calendar month must be in [1, 12]");
    int off = (calendar_month - crop.planting_month + 12) % 12;
    if (off >= crop.season_months()) return std::nullopt; // dormant
    if (off < crop.months_init) return crop.kc_init;
    off -= crop.months_init;
    if (off < crop.months_dev) return kc_ramp(crop, 1, (off + 0.5) / crop.months_dev);
    off -= crop.months_dev;
    if (off < crop.months_mid) return crop.kc_mid;
    off -= crop.months_mid;
    return kc_ramp(crop, 3, (off + 0.5) / crop.months_late);
}

double water_requirement(double pet_mm_day, double kc) {
    if (pet_mm_day < 0.0) throw ValidationError("water_requirement: pet must be >= 0");
    if (kc <= 0.0) throw ValidationError("water_requirement: kc must be > 0");
    return pet_mm_day * kc;
}

std::optional<double> wrsi_monthly(double aet_mm_day, double wr_mm_day, bool cap) {
    if (aet_mm_day < 0.0 || wr_mm_day < 0.0)
        throw ValidationError("wrsi_monthly: inputs must be >= 0");
    if (wr_mm_day == 0.0) return std::nullopt;
    // The ratio is formed first so that aet == wr gives exactly 100.
    const double v = 100.0 * (aet_mm_day / wr_mm_day);
    return cap ? std::min(v, 100.0) : v;
}

std::optional<double> wrsi_seasonal(std::span<const MonthlyWater> season, bool cap) {
    if (season.empty())
        throw ValidationError("wrsi_seasonal: season has no in-season months");
    double aet_sum = 0.0;
    double wr_sum = 0.0;
    for (const auto& m : season) {
        if (m.aet_mm_day < 0.0 || m.wr_mm_day < 0.0)
            throw ValidationError("wrsi_seasonal: inputs must be >= 0");
        const double days = static_cast<double>(m.month.days());
        aet_sum += m.aet_mm_day * days;
        wr_sum += m.wr_mm_day * days;
    }
    if (wr_sum == 0.0) return std::nullopt;
    // Same ordering as wrsi_monthly: a constant-ratio season lands exactly
    // on that ratio times 100.
    const double v = 100.0 * (aet_sum / wr_sum);
    return cap ? std::min(v, 100.0) : v;
}

WrsiSeries build_wrsi_series(std::span<const ClimateRecord> records, const SiteRecord& site,
                             const CropSpec& crop, bool cap) {
    crop.validate();
    WrsiSeries series;
    std::vector<MonthlyWater> in_season;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i > 0 && !(records[i - 1].year_month < records[i].year_month))
            throw ValidationError("build_wrsi_series: records must be sorted by month");
        const ClimateRecord& c = records[i];
        WrsiMonth m;
        m.month = c.year_month;
        m.pet_mm_day = penman_monteith(c, site);
        m.aet_mm_day = c.aet_mm_day;
        m.kc = kc_for(crop, c.year_month.month);
        if (m.kc) {
            m.wr_mm_day = water_requirement(m.pet_mm_day, *m.kc);
            m.wrsi = wrsi_monthly(m.aet_mm_day, m.wr_mm_day, cap);
            in_season.push_back({m.month, m.aet_mm_day, m.wr_mm_day});
        }
        series.months.push_back(m);
    }
    if (!in_season.empty()) series.seasonal = wrsi_seasonal(in_season, cap);
    return series;
}

std::vector<CropSpec> read_crop_specs(const std::filesystem::path& path) {
    RawCsv raw = read_table_csv_file(path);
    const std::size_t name = raw.column("name");
    const std::size_t ki = raw.column("kc_init");
    const std::size_t km = raw.column("kc_mid");
    const std::size_t ke = raw.column("kc_end");
    const std::size_t pm = raw.column("planting_month");
    const std::size_t m0 = raw.column("months_init");
    const std::size_t m1 = raw.column("months_dev");
    const std::size_t m2 = raw.column("months_mid");
    const std::size_t m3 = raw.column("months_late");
    std::vector<CropSpec> crops;
    crops.reserve(raw.rows.size());
    for (const auto& r : raw.rows) {
        CropSpec c;
        c.name = r[name];
        c.kc_init = parse_double(r[ki]);
        c.kc_mid = parse_double(r[km]);
        c.kc_end = parse_double(r[ke]);
        c.planting_month = static_cast<int>(parse_int(r[pm]));
        c.months_init = static_cast<int>(parse_int(r[m0]));
        c.months_dev = static_cast<int>(parse_int(r[m1]));
        c.months_mid = static_cast<int>(parse_int(r[m2]));
        c.months_late = static_cast<int>(parse_int(r[m3]));
        c.validate();
        crops.push_back(std::move(c));
    }
    if (crops.empty()) throw ValidationError(path.string() + ": no crops defined");
    return crops;
}

const CropSpec& find_crop(std::span<const CropSpec> crops, const std::string& name) {
    for (const auto& c : crops)
        if (c.name == name) return c;
    std::string known;
    for (const auto& c : crops) {
        if (!known.empty()) known += ", ";
        known += c.name;
    }
    throw ValidationError("unknown crop '" + name + "' (available: " + known + ")");
}

} // namespace simseed
