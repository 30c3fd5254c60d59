#include "simseed/plot.hpp"

#include "simseed/error.hpp"
#include "simseed/numfmt.hpp"
#include "plot_font.hpp"
#include "png_write.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

namespace simseed {
namespace {

struct Color {
    std::uint8_t r = 0, g = 0, b = 0, a = 255;

    std::string hex() const {
        char buf[8];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        return buf;
    }
};

constexpr Color kBlack{30, 30, 30};
constexpr Color kFrame{90, 90, 90};
constexpr Color kWhite{255, 255, 255};

// Series / gender palette (colorblind-friendly picks).
const Color kPalette[] = {
    {59, 82, 139}, {216, 160, 61}, {33, 144, 140}, {176, 65, 62}, {94, 201, 98}, {107, 76, 154},
};

// "viridis"-like perceptual ramp: 9 anchor colors, linearly interpolated.
const Color kViridis[] = {
    {68, 1, 84},    {71, 44, 122},  {59, 81, 139},  {44, 113, 142}, {33, 144, 141},
    {39, 173, 129}, {92, 200, 99},  {170, 220, 50}, {253, 231, 37},
};
const Color kGrays[] = {{40, 40, 40}, {245, 245, 245}};

Color ramp_color(const std::string& name, double t) {
    const Color* anchors = nullptr;
    std::size_t n = 0;
    if (name == "viridis") {
        anchors = kViridis;
        n = std::size(kViridis);
    } else if (name == "grays") {
        anchors = kGrays;
        n = std::size(kGrays);
    } else {
        throw ValidationError("unknown color ramp '" + name + "' (available: viridis, grays)");
    }
    t = std::clamp(t, 0.0, 1.0);
    const double pos = t * static_cast<double>(n - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(pos), n - 2);
    const double f = pos - static_cast<double>(i);
    auto mixc = [&](std::uint8_t x, std::uint8_t y) {
        return static_cast<std::uint8_t>(std::lround(x + (y - x) * f));
    };
    return {mixc(anchors[i].r, anchors[i + 1].r), mixc(anchors[i].g, anchors[i + 1].g),
            mixc(anchors[i].b, anchors[i + 1].b)};
}

enum class Anchor { Start, Middle, End };

class Canvas {
public:
    virtual ~Canvas() = default;
    virtual void fill_rect(double x, double y, double w, double h, Color c) = 0;
    virtual void line(double x1, double y1, double x2, double y2, Color c) = 0;
    // y is the text baseline.
    virtual void text(double x, double y, const std::string& s, Color c, int size,
                      Anchor anchor) = 0;
    virtual void save(const std::filesystem::path& path) = 0;
};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char ch : s) {
        if (ch == '&') out += "&amp;";
        else if (ch == '<') out += "&lt;";
        else if (ch == '>') out += "&gt;";
        else out += ch;
    }
    return out;
}

class SvgCanvas final : public Canvas {
public:
    SvgCanvas(int width, int height) : width_(width), height_(height) {
        body_ << "<rect x=\"0\" y=\"0\" width=\"" << width_ << "\" height=\"" << height_
              << "\" fill=\"#ffffff\"/>\n";
    }

    void fill_rect(double x, double y, double w, double h, Color c) override {
        if (c.a == 0) return;
        body_ << "<rect x=\"" << fmt2(x) << "\" y=\"" << fmt2(y) << "\" width=\"" << fmt2(w)
              << "\" height=\"" << fmt2(h) << "\" fill=\"" << c.hex() << "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, Color c) override {
        body_ << "<line x1=\"" << fmt2(x1) << "\" y1=\"" << fmt2(y1) << "\" x2=\"" << fmt2(x2)
              << "\" y2=\"" << fmt2(y2) << "\" stroke=\"" << c.hex()
              << "\" stroke-width=\"1\"/>\n";
    }

    void text(double x, double y, const std::string& s, Color c, int size,
              Anchor anchor) override {
        const char* ta = anchor == Anchor::Start ? "start"
                         : anchor == Anchor::Middle ? "middle"
                                                    : "end";
        body_ << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(y)
              << "\" font-family=\"DejaVu Sans Mono, monospace\" font-size=\"" << size
              << "\" text-anchor=\"" << ta << "\" fill=\"" << c.hex() << "\">" << xml_escape(s)
              << "</text>\n";
    }

    void save(const std::filesystem::path& path) override {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
            << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
            << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
            << body_.str() << "</svg>\n";
        if (!out) throw IoError("failed writing " + path.string());
    }

private:
    int width_;
    int height_;
    std::ostringstream body_;
};

class PngCanvas final : public Canvas {
public:
    PngCanvas(int width, int height) : width_(width), height_(height) {
        pixels_.assign(static_cast<std::size_t>(width) * height * 4, 255);
    }

    void fill_rect(double x, double y, double w, double h, Color c) override {
        if (c.a == 0) return;
        const int x0 = std::max(0, static_cast<int>(std::lround(x)));
        const int y0 = std::max(0, static_cast<int>(std::lround(y)));
        const int x1 = std::min(width_, static_cast<int>(std::lround(x + w)));
        const int y1 = std::min(height_, static_cast<int>(std::lround(y + h)));
        for (int py = y0; py < y1; ++py)
            for (int px = x0; px < x1; ++px) set(px, py, c);
    }

    void line(double x1, double y1, double x2, double y2, Color c) override {
        int x0 = static_cast<int>(std::lround(x1));
        int y0 = static_cast<int>(std::lround(y1));
        const int xe = static_cast<int>(std::lround(x2));
        const int ye = static_cast<int>(std::lround(y2));
        const int dx = std::abs(xe - x0), sx = x0 < xe ? 1 : -1;
        const int dy = -std::abs(ye - y0), sy = y0 < ye ? 1 : -1;
        int err = dx + dy;
        while (true) {
            set(x0, y0, c);
            if (x0 == xe && y0 == ye) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += sx;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += sy;
            }
        }
    }

    void text(double x, double y, const std::string& s, Color c, int /*size*/,
              Anchor anchor) override {
        const int w = fontdata::kGlyphWidth;
        double left = x;
        const double total = static_cast<double>(s.size()) * w;
        if (anchor == Anchor::Middle) left -= total / 2.0;
        if (anchor == Anchor::End) left -= total;
        // Baseline sits at glyph row 9 of the 11-row cell.
        const int top = static_cast<int>(std::lround(y)) - 9;
        int cx = static_cast<int>(std::lround(left));
        for (char ch : s) {
            const unsigned code = static_cast<unsigned char>(ch);
            if (code >= 32 && code < 127) {
                const auto& glyph = fontdata::kGlyphs[code - 32];
                for (int gy = 0; gy < fontdata::kGlyphHeight; ++gy)
                    for (int gx = 0; gx < w; ++gx)
                        if (glyph[gy] & (1u << (w - 1 - gx))) set(cx + gx, top + gy, c);
            }
            cx += w;
        }
    }

    void save(const std::filesystem::path& path) override {
        write_png(path, width_, height_, pixels_);
    }

private:
    void set(int x, int y, Color c) {
        if (x < 0 || y < 0 || x >= width_ || y >= height_) return;
        auto* p = &pixels_[(static_cast<std::size_t>(y) * width_ + x) * 4];
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
        p[3] = 255;
    }

    int width_;
    int height_;
    std::vector<std::uint8_t> pixels_;
};

std::unique_ptr<Canvas> make_canvas(const PlotSpec& spec) {
    const std::string ext = spec.out_path.extension().string();
    if (ext == ".svg") return std::make_unique<SvgCanvas>(spec.width, spec.height);
    if (ext == ".png") return std::make_unique<PngCanvas>(spec.width, spec.height);
    throw ValidationError("plot output '" + spec.out_path.string() +
                          "' must end in .svg or .png");
}

struct Frame {
    double left, top, right, bottom;

    double w() const { return right - left; }
    double h() const { return bottom - top; }
};

Frame plot_frame(const PlotSpec& spec, double right_margin) {
    Frame f{72.0, 44.0, spec.width - right_margin, spec.height - 48.0};
    if (f.w() <= 0 || f.h() <= 0)
        throw ValidationError("plot dimensions too small for the fixed margins");
    return f;
}

void draw_frame(Canvas& cv, const Frame& f) {
    cv.line(f.left, f.top, f.right, f.top, kFrame);
    cv.line(f.right, f.top, f.right, f.bottom, kFrame);
    cv.line(f.left, f.bottom, f.right, f.bottom, kFrame);
    cv.line(f.left, f.top, f.left, f.bottom, kFrame);
}

void draw_title(Canvas& cv, const PlotSpec& spec) {
    if (!spec.title.empty())
        cv.text(spec.width / 2.0, 26.0, spec.title, kBlack, 14, Anchor::Middle);
}

std::string fmt_tick(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string fmt_geo(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

// Smallest "nice" step (1/2/5 times a power of ten) giving <= target ticks.
double nice_step(double span, int target) {
    if (span <= 0.0) return 1.0;
    const double raw = span / target;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag + 1e-12 * mag) return m * mag;
    return 10.0 * mag;
}

// Minimum gap between adjacent distinct coordinates; 0 when fewer than two.
double min_gap(const std::set<double>& vals) {
    double gap = 0.0;
    const double* prev = nullptr;
    for (const double& v : vals) {
        if (prev) {
            const double g = v - *prev;
            if (gap == 0.0 || g < gap) gap = g;
        }
        prev = &v;
    }
    return gap;
}

void draw_value_axis(Canvas& cv, const Frame& f, double lo, double hi) {
    const double step = nice_step(hi - lo, 5);
    for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
        const double y = f.bottom - (v - lo) / (hi - lo) * f.h();
        cv.line(f.left - 4, y, f.left, y, kFrame);
        cv.text(f.left - 7, y + 4, fmt_tick(v), kBlack, 12, Anchor::End);
    }
}

} // namespace

void PlotSpec::validate() const {
    if (width <= 0 || height <= 0)
        throw ValidationError("plot width and height must be positive");
    if (out_path.empty()) throw ValidationError("plot output path is empty");
    (void)plot_frame(*this, 24.0);
}

void emit_heatmap(std::span<const HeatCell> cells, const PlotSpec& spec) {
    spec.validate();
    if (cells.empty()) throw ValidationError("emit_heatmap: empty table");

    std::set<double> lats, lons;
    double vmin = 0.0, vmax = 0.0;
    bool have_value = false;
    for (const auto& c : cells) {
        lats.insert(c.lat);
        lons.insert(c.lon);
        if (std::isnan(c.value)) continue;
        if (!have_value) {
            vmin = vmax = c.value;
            have_value = true;
        } else {
            vmin = std::min(vmin, c.value);
            vmax = std::max(vmax, c.value);
        }
    }

    double lat_step = min_gap(lats);
    double lon_step = min_gap(lons);
    if (lat_step == 0.0) lat_step = lon_step;
    if (lon_step == 0.0) lon_step = lat_step;
    if (lat_step == 0.0) lat_step = lon_step = 0.01; // single cell: nominal size

    const double lat0 = *lats.begin() - lat_step / 2, lat1 = *lats.rbegin() + lat_step / 2;
    const double lon0 = *lons.begin() - lon_step / 2, lon1 = *lons.rbegin() + lon_step / 2;

    auto cv = make_canvas(spec);
    const Frame f = plot_frame(spec, 110.0);
    auto px = [&](double lon) { return f.left + (lon - lon0) / (lon1 - lon0) * f.w(); };
    auto py = [&](double lat) { return f.bottom - (lat - lat0) / (lat1 - lat0) * f.h(); };

    draw_title(*cv, spec);
    for (const auto& c : cells) {
        if (std::isnan(c.value)) continue; // nodata stays background
        const double t = vmax > vmin ? (c.value - vmin) / (vmax - vmin) : 0.0;
        const double x = px(c.lon - lon_step / 2);
        const double y = py(c.lat + lat_step / 2);
        cv->fill_rect(x, y, px(c.lon + lon_step / 2) - x, py(c.lat - lat_step / 2) - y,
                      ramp_color(spec.ramp, t));
    }
    draw_frame(*cv, f);

    for (int i = 0; i <= 4; ++i) {
        const double fr = i / 4.0;
        const double lon = lon0 + fr * (lon1 - lon0);
        const double lat = lat0 + fr * (lat1 - lat0);
        const double x = f.left + fr * f.w();
        const double y = f.bottom - fr * f.h();
        cv->line(x, f.bottom, x, f.bottom + 4, kFrame);
        cv->text(x, f.bottom + 18, fmt_geo(lon), kBlack, 12, Anchor::Middle);
        cv->line(f.left - 4, y, f.left, y, kFrame);
        cv->text(f.left - 7, y + 4, fmt_geo(lat), kBlack, 12, Anchor::End);
    }
    cv->text((f.left + f.right) / 2, spec.height - 10.0, "longitude", kBlack, 12, Anchor::Middle);
    cv->text(14.0, f.top - 8, "latitude", kBlack, 12, Anchor::Start);

    // Legend: vertical ramp with min/max labels.
    if (have_value) {
        const double lx = f.right + 24;
        const double lw = 18;
        const int strips = 64;
        for (int i = 0; i < strips; ++i) {
            const double t0 = static_cast<double>(i) / strips;
            const double t1 = static_cast<double>(i + 1) / strips;
            const double y1 = f.bottom - t0 * f.h();
            const double y0 = f.bottom - t1 * f.h();
            cv->fill_rect(lx, y0, lw, y1 - y0, ramp_color(spec.ramp, (t0 + t1) / 2));
        }
        cv->line(lx, f.top, lx + lw, f.top, kFrame);
        cv->line(lx + lw, f.top, lx + lw, f.bottom, kFrame);
        cv->line(lx, f.bottom, lx + lw, f.bottom, kFrame);
        cv->line(lx, f.top, lx, f.bottom, kFrame);
        cv->text(lx, f.top - 8, fmt_tick(vmax), kBlack, 12, Anchor::Start);
        cv->text(lx, f.bottom + 18, fmt_tick(vmin), kBlack, 12, Anchor::Start);
    }
    cv->save(spec.out_path);
}

void emit_pyramid(std::span<const PyramidRow> rows, const PlotSpec& spec) {
    spec.validate();
    if (rows.empty()) throw ValidationError("emit_pyramid: empty table");

    std::vector<std::string> brackets, genders;
    long long peak = 0;
    for (const auto& r : rows) {
        if (std::find(brackets.begin(), brackets.end(), r.bracket) == brackets.end())
            brackets.push_back(r.bracket);
        if (std::find(genders.begin(), genders.end(), r.gender) == genders.end())
            genders.push_back(r.gender);
        peak = std::max(peak, r.count);
    }
    const double hi = peak > 0 ? peak * 1.05 : 1.0;

    auto cv = make_canvas(spec);
    const Frame f = plot_frame(spec, 24.0);
    draw_title(*cv, spec);
    draw_value_axis(*cv, f, 0.0, hi);

    auto count_of = [&](const std::string& g, const std::string& b) -> long long {
        for (const auto& r : rows)
            if (r.gender == g && r.bracket == b) return r.count;
        return 0;
    };

    const double group_w = f.w() / static_cast<double>(brackets.size());
    const double bar_w = group_w * 0.8 / static_cast<double>(genders.size());
    for (std::size_t bi = 0; bi < brackets.size(); ++bi) {
        const double gx = f.left + group_w * static_cast<double>(bi);
        for (std::size_t gi = 0; gi < genders.size(); ++gi) {
            const long long count = count_of(genders[gi], brackets[bi]);
            const double h = static_cast<double>(count) / hi * f.h();
            const double x = gx + group_w * 0.1 + bar_w * static_cast<double>(gi);
            cv->fill_rect(x, f.bottom - h, bar_w, h, kPalette[gi % std::size(kPalette)]);
        }
        cv->text(gx + group_w / 2, f.bottom + 18, brackets[bi], kBlack, 12, Anchor::Middle);
    }
    draw_frame(*cv, f);

    for (std::size_t gi = 0; gi < genders.size(); ++gi) {
        const double y = f.top + 14 + 18 * static_cast<double>(gi);
        cv->fill_rect(f.right - 86, y - 9, 12, 12, kPalette[gi % std::size(kPalette)]);
        cv->text(f.right - 70, y + 2, genders[gi], kBlack, 12, Anchor::Start);
    }
    cv->text((f.left + f.right) / 2, spec.height - 10.0, "age bracket", kBlack, 12,
             Anchor::Middle);
    cv->save(spec.out_path);
}

void emit_timeseries(std::span<const YearMonth> months, std::span<const TimeSeries> series,
                     const PlotSpec& spec) {
    spec.validate();
    if (months.empty() || series.empty()) throw ValidationError("emit_timeseries: empty series");

    double vmin = 0.0, vmax = 0.0;
    bool have = false;
    for (const auto& s : series) {
        if (s.values.size() != months.size())
            throw ValidationError("emit_timeseries: series '" + s.label +
                                  "' length does not match the month axis");
        for (const auto& v : s.values) {
            if (!v) continue;
            if (!have) {
                vmin = vmax = *v;
                have = true;
            } else {
                vmin = std::min(vmin, *v);
                vmax = std::max(vmax, *v);
            }
        }
    }
    if (!have) throw ValidationError("emit_timeseries: no data points");
    const double lo = std::min(0.0, vmin);
    double hi = vmax;
    if (hi <= lo) hi = lo + 1.0;
    hi += (hi - lo) * 0.05;

    auto cv = make_canvas(spec);
    const Frame f = plot_frame(spec, 24.0);
    draw_title(*cv, spec);
    draw_value_axis(*cv, f, lo, hi);

    auto xi = [&](std::size_t i) {
        if (months.size() == 1) return f.left + f.w() / 2;
        return f.left + f.w() * static_cast<double>(i) / static_cast<double>(months.size() - 1);
    };
    auto yi = [&](double v) { return f.bottom - (v - lo) / (hi - lo) * f.h(); };

    const std::size_t stride = std::max<std::size_t>(1, (months.size() + 7) / 8);
    for (std::size_t i = 0; i < months.size(); i += stride) {
        cv->line(xi(i), f.bottom, xi(i), f.bottom + 4, kFrame);
        cv->text(xi(i), f.bottom + 18, months[i].str(), kBlack, 12, Anchor::Middle);
    }

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Color c = kPalette[si % std::size(kPalette)];
        const auto& vals = series[si].values;
        for (std::size_t i = 0; i + 1 < vals.size(); ++i)
            if (vals[i] && vals[i + 1])
                cv->line(xi(i), yi(*vals[i]), xi(i + 1), yi(*vals[i + 1]), c);
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (vals[i]) cv->fill_rect(xi(i) - 2, yi(*vals[i]) - 2, 4, 4, c);
    }
    draw_frame(*cv, f);

    for (std::size_t si = 0; si < series.size(); ++si) {
        const double y = f.top + 14 + 18 * static_cast<double>(si);
        cv->fill_rect(f.right - 150, y - 9, 12, 12, kPalette[si % std::size(kPalette)]);
        cv->text(f.right - 134, y + 2, series[si].label, kBlack, 12, Anchor::Start);
    }
    cv->text((f.left + f.right) / 2, spec.height - 10.0, "month", kBlack, 12, Anchor::Middle);
    cv->save(spec.out_path);
}

void emit_blank(const PlotSpec& spec, const std::string& note) {
    spec.validate();
    auto cv = make_canvas(spec);
    const Frame f = plot_frame(spec, 24.0);
    draw_title(*cv, spec);
    draw_frame(*cv, f);
    cv->text((f.left + f.right) / 2, (f.top + f.bottom) / 2, note, kBlack, 12, Anchor::Middle);
    cv->save(spec.out_path);
}

} // namespace simseed
