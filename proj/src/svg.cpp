#include "fpme/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "fpme/errors.hpp"

namespace fpme {

namespace {
constexpr double kW = 720, kH = 480;
constexpr double kMargin = 60;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}
}  // namespace

SvgPlot::SvgPlot(const std::string& title, bool log_x, bool log_y)
    : title_(title), log_x_(log_x), log_y_(log_y) {}

void SvgPlot::add_series(const std::vector<double>& x, const std::vector<double>& y,
                         const std::string& color, const std::string& label) {
    series_.push_back({x, y, color, label, false});
}

void SvgPlot::add_guide(double x0, double y0, double slope, const std::string& color,
                        const std::string& label) {
    Series s;
    s.x = {x0, y0, slope};
    s.color = color;
    s.label = label;
    s.guide = true;
    series_.push_back(s);
}

void SvgPlot::write(const std::string& path) const {
    auto tx = [&](double v) { return log_x_ ? std::log10(v) : v; };
    auto ty = [&](double v) { return log_y_ ? std::log10(v) : v; };
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Series& s : series_) {
        if (s.guide) continue;
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (log_x_ && s.x[i] <= 0.0) continue;
            if (log_y_ && s.y[i] <= 0.0) continue;
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, ty(s.y[i]));
            ymax = std::max(ymax, ty(s.y[i]));
        }
    }
    if (!(xmax > xmin)) { xmin = 0; xmax = 1; }
    if (!(ymax > ymin)) { ymin = 0; ymax = 1; }
    const double padx = 0.05 * (xmax - xmin), pady = 0.05 * (ymax - ymin);
    xmin -= padx; xmax += padx; ymin -= pady; ymax += pady;
    auto px = [&](double v) { return kMargin + (tx(v) - xmin) / (xmax - xmin) * (kW - 2 * kMargin); };
    auto py = [&](double v) { return kH - kMargin - (ty(v) - ymin) / (ymax - ymin) * (kH - 2 * kMargin); };

    std::ofstream out(path);
    if (!out) throw Error("SvgPlot: cannot open " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH
        << "' viewBox='0 0 " << kW << " " << kH << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << kW / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title_
        << "</text>\n";
    // Frame and ticks.
    out << "<rect x='" << kMargin << "' y='" << kMargin << "' width='" << kW - 2 * kMargin
        << "' height='" << kH - 2 * kMargin << "' fill='none' stroke='black'/>\n";
    for (int k = 0; k <= 5; ++k) {
        const double fx = xmin + k * (xmax - xmin) / 5.0;
        const double fy = ymin + k * (ymax - ymin) / 5.0;
        const double X = kMargin + k * (kW - 2 * kMargin) / 5.0;
        const double Y = kH - kMargin - k * (kH - 2 * kMargin) / 5.0;
        const double lx = log_x_ ? std::pow(10.0, fx) : fx;
        const double ly = log_y_ ? std::pow(10.0, fy) : fy;
        out << "<line x1='" << X << "' y1='" << kH - kMargin << "' x2='" << X << "' y2='"
            << kH - kMargin + 5 << "' stroke='black'/>\n";
        out << "<text x='" << X << "' y='" << kH - kMargin + 18
            << "' text-anchor='middle' font-size='10'>" << fmt(lx) << "</text>\n";
        out << "<line x1='" << kMargin - 5 << "' y1='" << Y << "' x2='" << kMargin << "' y2='" << Y
            << "' stroke='black'/>\n";
        out << "<text x='" << kMargin - 8 << "' y='" << Y + 3
            << "' text-anchor='end' font-size='10'>" << fmt(ly) << "</text>\n";
    }
    int legend_row = 0;
    for (const Series& s : series_) {
        if (s.guide) {
            // Dashed straight line through (x0, y0) with the given slope in
            // transformed coordinates.
            const double x0 = tx(s.x[0]), y0 = ty(s.x[1]), slope = s.x[2];
            const double ya = y0 + slope * (xmin - x0), yb = y0 + slope * (xmax - x0);
            const double X1 = kMargin, X2 = kW - kMargin;
            const double Y1 = kH - kMargin - (ya - ymin) / (ymax - ymin) * (kH - 2 * kMargin);
            const double Y2 = kH - kMargin - (yb - ymin) / (ymax - ymin) * (kH - 2 * kMargin);
            out << "<line x1='" << X1 << "' y1='" << Y1 << "' x2='" << X2 << "' y2='" << Y2
                << "' stroke='" << s.color << "' stroke-dasharray='6,4'/>\n";
        } else {
            out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
            for (size_t i = 0; i < s.x.size(); ++i) {
                if (log_x_ && s.x[i] <= 0.0) continue;
                if (log_y_ && s.y[i] <= 0.0) continue;
                out << px(s.x[i]) << "," << py(s.y[i]) << " ";
            }
            out << "'/>\n";
        }
        if (!s.label.empty()) {
            const double Y = kMargin + 16 + 14 * legend_row++;
            out << "<line x1='" << kW - kMargin - 120 << "' y1='" << Y - 4 << "' x2='"
                << kW - kMargin - 100 << "' y2='" << Y - 4 << "' stroke='" << s.color << "'"
                << (s.guide ? " stroke-dasharray='6,4'" : "") << "/>\n";
            out << "<text x='" << kW - kMargin - 95 << "' y='" << Y << "' font-size='11'>"
                << s.label << "</text>\n";
        }
    }
    out << "</svg>\n";
}

}  // namespace fpme
