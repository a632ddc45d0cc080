#include "netdiff/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "netdiff/errors.hpp"

namespace netdiff {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string render_line_chart(const std::vector<SvgSeries>& series, const SvgOptions& opts) {
    if (series.empty()) throw ValidationError("nothing to plot");

    const double L = 64, R = 18, T = opts.title.empty() ? 18 : 34, B = 44;
    const double plot_w = opts.width - L - R;
    const double plot_h = opts.height - T - B;

    auto yval = [&](double y) {
        if (!opts.log_y) return y;
        return y > 0.0 ? std::log10(y) : std::numeric_limits<double>::quiet_NaN();
    };

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size()) throw ValidationError("series size mismatch");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double yy = yval(s.y[i]);
            if (!std::isfinite(s.x[i]) || !std::isfinite(yy)) continue;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, yy);
            ymax = std::max(ymax, yy);
        }
    }
    if (!std::isfinite(xmin) || !std::isfinite(ymin))
        throw ValidationError("no finite points to plot");
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymax += 0.5;
        ymin -= 0.5;
    }

    auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return T + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << opts.width
        << "\" height=\"" << opts.height << "\" viewBox=\"0 0 " << opts.width << ' '
        << opts.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!opts.title.empty())
        svg << "<text x=\"" << opts.width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"14\">" << escape(opts.title)
            << "</text>\n";

    // frame and ticks
    svg << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / nticks;
        const double fy = ymin + (ymax - ymin) * i / nticks;
        svg << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << T + plot_h << "\" x2=\""
            << num(px(fx)) << "\" y2=\"" << T + plot_h + 5 << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << num(px(fx)) << "\" y=\"" << T + plot_h + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << num(fx) << "</text>\n";
        svg << "<line x1=\"" << L - 5 << "\" y1=\"" << num(py(fy)) << "\" x2=\"" << L
            << "\" y2=\"" << num(py(fy)) << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << L - 8 << "\" y=\"" << num(py(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << (opts.log_y ? "1e" + num(fy) : num(fy)) << "</text>\n";
    }
    svg << "<text x=\"" << L + plot_w / 2 << "\" y=\"" << opts.height - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(opts.x_label) << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        // break the polyline at nonplottable points
        std::vector<std::string> segments;
        std::string seg;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            const double yy = yval(s.y[i]);
            if (!std::isfinite(s.x[i]) || !std::isfinite(yy)) {
                if (!seg.empty()) segments.push_back(std::move(seg));
                seg.clear();
                continue;
            }
            seg += num(px(s.x[i])) + "," + num(py(yy)) + " ";
        }
        if (!seg.empty()) segments.push_back(std::move(seg));
        for (const auto& points : segments)
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"" << points << "\"/>\n";

        const double ly = T + 16 + 16 * static_cast<double>(si);
        svg << "<line x1=\"" << L + plot_w - 150 << "\" y1=\"" << num(ly - 4) << "\" x2=\""
            << L + plot_w - 130 << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << L + plot_w - 124 << "\" y=\"" << num(ly)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(s.name)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

} // namespace netdiff
