#include "io/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "core/errors.hpp"

namespace qpl {
namespace {

const char* kPalette[] = {"#1f6fb4", "#d1495b", "#2e8b57", "#8a5fbf", "#c77f26", "#4a4a4a"};

struct Range {
    double lo = 0.0, hi = 1.0;
};

Range find_range(const std::vector<PlotSeries>& series, bool use_x) {
    Range r{1e300, -1e300};
    for (const auto& s : series)
        for (double v : (use_x ? s.x : s.y)) {
            if (!std::isfinite(v)) continue;
            r.lo = std::min(r.lo, v);
            r.hi = std::max(r.hi, v);
        }
    if (r.lo > r.hi) r = {0.0, 1.0};
    if (r.lo == r.hi) {
        r.lo -= 0.5;
        r.hi += 0.5;
    }
    const double pad = 0.04 * (r.hi - r.lo);
    return {r.lo - pad, r.hi + pad};
}

double nice_step(double span, int target_ticks) {
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double mult : {1.0, 2.0, 5.0, 10.0})
        if (raw <= mult * mag) return mult * mag;
    return 10.0 * mag;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

void write_line_plot_svg(const std::filesystem::path& path, const std::string& title,
                         const std::string& x_label, const std::string& y_label,
                         const std::vector<PlotSeries>& series, int width, int height) {
    std::ofstream f(path);
    if (!f) throw UsageError("write_line_plot_svg: cannot open " + path.string());

    const double ml = 72, mr = 24, mt = 42, mb = 52;
    const double pw = width - ml - mr, ph = height - mt - mb;
    const Range rx = find_range(series, true);
    const Range ry = find_range(series, false);
    auto sx = [&](double v) { return ml + (v - rx.lo) / (rx.hi - rx.lo) * pw; };
    auto sy = [&](double v) { return mt + ph - (v - ry.lo) / (ry.hi - ry.lo) * ph; };

    f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    f << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    f << "<text x=\"" << width / 2 << "\" y=\"24\" font-size=\"15\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\">" << title << "</text>\n";

    // frame
    f << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#333\"/>\n";

    // ticks
    const double xstep = nice_step(rx.hi - rx.lo, 8);
    for (double v = std::ceil(rx.lo / xstep) * xstep; v <= rx.hi + 1e-12 * xstep; v += xstep) {
        f << "<line x1=\"" << sx(v) << "\" y1=\"" << mt + ph << "\" x2=\"" << sx(v) << "\" y2=\""
          << mt + ph + 5 << "\" stroke=\"#333\"/>\n";
        f << "<text x=\"" << sx(v) << "\" y=\"" << mt + ph + 20
          << "\" font-size=\"11\" text-anchor=\"middle\" font-family=\"sans-serif\">" << fmt(v)
          << "</text>\n";
    }
    const double ystep = nice_step(ry.hi - ry.lo, 6);
    for (double v = std::ceil(ry.lo / ystep) * ystep; v <= ry.hi + 1e-12 * ystep; v += ystep) {
        f << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(v) << "\" x2=\"" << ml << "\" y2=\""
          << sy(v) << "\" stroke=\"#333\"/>\n";
        f << "<text x=\"" << ml - 8 << "\" y=\"" << sy(v) + 4
          << "\" font-size=\"11\" text-anchor=\"end\" font-family=\"sans-serif\">" << fmt(v)
          << "</text>\n";
    }

    // zero line if inside range
    if (ry.lo < 0.0 && ry.hi > 0.0)
        f << "<line x1=\"" << ml << "\" y1=\"" << sy(0.0) << "\" x2=\"" << ml + pw << "\" y2=\""
          << sy(0.0) << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";

    // series
    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        const std::string color =
            ser.color.empty() ? kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))] : ser.color;
        f << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < ser.x.size(); ++i) {
            if (!std::isfinite(ser.x[i]) || !std::isfinite(ser.y[i])) continue;
            f << fmt(sx(ser.x[i])) << "," << fmt(sy(ser.y[i])) << " ";
        }
        f << "\"/>\n";
        // legend entry
        const double ly = mt + 16 + 18 * static_cast<double>(s);
        f << "<line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly << "\" x2=\"" << ml + pw - 126
          << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        f << "<text x=\"" << ml + pw - 120 << "\" y=\"" << ly + 4
          << "\" font-size=\"11\" font-family=\"sans-serif\">" << ser.label << "</text>\n";
    }

    // axis labels
    f << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
      << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">" << x_label
      << "</text>\n";
    f << "<text x=\"16\" y=\"" << mt + ph / 2
      << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\" transform=\"rotate(-90 16 "
      << mt + ph / 2 << ")\">" << y_label << "</text>\n";
    f << "</svg>\n";
}

}  // namespace qpl
