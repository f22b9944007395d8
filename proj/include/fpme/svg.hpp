#pragma once

#include <string>
#include <vector>

namespace fpme {

// Hand-rolled SVG line plots (axes, log ticks, slope guides). Advisory
// artifacts only; pass/fail always lives in the JSON reports.
class SvgPlot {
public:
    SvgPlot(const std::string& title, bool log_x, bool log_y);

    void add_series(const std::vector<double>& x, const std::vector<double>& y,
                    const std::string& color, const std::string& label);

    // Straight guide in plot coordinates through (x0, y0) with the given
    // slope (in log-log space when both axes are logarithmic).
    void add_guide(double x0, double y0, double slope, const std::string& color,
                   const std::string& label);

    void write(const std::string& path) const;

private:
    struct Series {
        std::vector<double> x, y;
        std::string color, label;
        bool guide = false;
    };
    std::string title_;
    bool log_x_, log_y_;
    std::vector<Series> series_;
};

}  // namespace fpme
