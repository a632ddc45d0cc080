#ifndef NETDIFF_SVG_HPP
#define NETDIFF_SVG_HPP

#include <string>
#include <vector>

namespace netdiff {

struct SvgSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct SvgOptions {
    int width = 800;
    int height = 500;
    bool log_y = false; // plot log10(y); nonpositive points break the polyline
    std::string title;
    std::string x_label = "t";
};

/// Standalone SVG 1.1 line chart: axes, ticks, one polyline per series and a
/// legend from the series names. No timestamps or other nondeterminism.
std::string render_line_chart(const std::vector<SvgSeries>& series, const SvgOptions& opts = {});

} // namespace netdiff

#endif
