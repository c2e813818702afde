#include "igk/cli/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <limits>
#include <sstream>

#include "igk/error.hpp"

namespace igk::cli {

namespace {

constexpr std::array<const char*, 20> kPalette = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#c5b0d5", "#c49c94",
    "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5", "#393b79", "#637939"};

constexpr double kSize = 640.0;
constexpr double kMargin = 48.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            default: out += c;
        }
    }
    return out;
}

struct Frame {
    double x0, x1, y0, y1;

    double sx(double x) const { return kMargin + (x - x0) / (x1 - x0) * (kSize - 2 * kMargin); }
    double sy(double y) const { return kSize - kMargin - (y - y0) / (y1 - y0) * (kSize - 2 * kMargin); }

    void include(double x, double y) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    }
    void pad() {
        if (x1 <= x0) { x0 -= 1.0; x1 += 1.0; }
        if (y1 <= y0) { y0 -= 1.0; y1 += 1.0; }
    }
};

Frame empty_frame() {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, -inf, inf, -inf};
}

void open_svg(std::ostringstream& s, std::string_view title) {
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << ' ' << kSize << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(kSize / 2) << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << escape(title) << "</text>\n";
}

void axes(std::ostringstream& s, const Frame& f, std::string_view xlabel, std::string_view ylabel) {
    const double l = kMargin, r = kSize - kMargin, t = kMargin, b = kSize - kMargin;
    s << "<rect x=\"" << num(l) << "\" y=\"" << num(t) << "\" width=\"" << num(r - l) << "\" height=\""
      << num(b - t) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = f.x0 + (f.x1 - f.x0) * i / 4.0;
        const double fy = f.y0 + (f.y1 - f.y0) * i / 4.0;
        s << "<text x=\"" << num(f.sx(fx)) << "\" y=\"" << num(b + 16)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << num(fx)
          << "</text>\n";
        s << "<text x=\"" << num(l - 4) << "\" y=\"" << num(f.sy(fy) + 3)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << num(fy)
          << "</text>\n";
    }
    if (!xlabel.empty()) {
        s << "<text x=\"" << num(kSize / 2) << "\" y=\"" << num(kSize - 8)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(xlabel)
          << "</text>\n";
    }
    if (!ylabel.empty()) {
        s << "<text x=\"12\" y=\"" << num(kSize / 2) << "\" transform=\"rotate(-90 12 " << num(kSize / 2)
          << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << escape(ylabel)
          << "</text>\n";
    }
}

}  // namespace

std::optional<PlotKind> parse_plot_kind(std::string_view s) {
    if (s == "scatter_clusters") return PlotKind::scatter_clusters;
    if (s == "scatter_removed") return PlotKind::scatter_removed;
    if (s == "mse_vs_threshold") return PlotKind::mse_vs_threshold;
    return std::nullopt;
}

std::string render_scatter(const DataSet& data, const Centroids& centroids,
                           const std::set<PointId>& removed, std::string_view title) {
    if (data.dim() != 2 || (!centroids.empty() && centroids.dim() != 2)) {
        throw DimensionMismatch("scatter plots need 2-D data");
    }
    Frame f = empty_frame();
    for (std::size_t i = 0; i < data.size(); ++i) f.include(data.point(i)[0], data.point(i)[1]);
    for (std::size_t j = 0; j < centroids.count(); ++j) {
        f.include(centroids.row(j)[0], centroids.row(j)[1]);
    }
    f.pad();

    std::ostringstream s;
    open_svg(s, title);
    axes(s, f, "x", "y");
    s << "<g id=\"points\">\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto p = data.point(i);
        if (removed.count(data.id(i))) continue;
        std::size_t label = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < centroids.count(); ++j) {
            const double d = squared_distance(p, centroids.row(j));
            if (d < best) {
                best = d;
                label = j;
            }
        }
        s << "<circle class=\"point\" cx=\"" << num(f.sx(p[0])) << "\" cy=\"" << num(f.sy(p[1]))
          << "\" r=\"1.6\" fill=\"" << kPalette[label % kPalette.size()] << "\"/>\n";
    }
    s << "</g>\n<g id=\"removed\">\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!removed.count(data.id(i))) continue;
        const double x = f.sx(data.point(i)[0]);
        const double y = f.sy(data.point(i)[1]);
        s << "<path class=\"removed\" d=\"M" << num(x - 4) << ' ' << num(y - 4) << " L" << num(x + 4) << ' '
          << num(y + 4) << " M" << num(x - 4) << ' ' << num(y + 4) << " L" << num(x + 4) << ' '
          << num(y - 4) << "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
    }
    s << "</g>\n<g id=\"centroids\">\n";
    for (std::size_t j = 0; j < centroids.count(); ++j) {
        const double x = f.sx(centroids.row(j)[0]);
        const double y = f.sy(centroids.row(j)[1]);
        s << "<rect class=\"centroid\" x=\"" << num(x - 4) << "\" y=\"" << num(y - 4)
          << "\" width=\"8\" height=\"8\" fill=\"black\" stroke=\"white\"/>\n";
    }
    s << "</g>\n</svg>\n";
    return s.str();
}

std::string render_sweep(const std::vector<SweepRow>& rows, std::string_view title) {
    Frame f = empty_frame();
    for (const auto& r : rows) f.include(r.threshold, r.median_mse);
    if (rows.empty()) f = {0.0, 1.0, 0.0, 1.0};
    f.pad();

    std::ostringstream s;
    open_svg(s, title);
    axes(s, f, "threshold T", "MSE");
    s << "<polyline class=\"curve\" fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        s << (i ? " " : "") << num(f.sx(rows[i].threshold)) << ',' << num(f.sy(rows[i].median_mse));
    }
    s << "\"/>\n";
    for (const auto& r : rows) {
        s << "<circle class=\"vertex\" cx=\"" << num(f.sx(r.threshold)) << "\" cy=\""
          << num(f.sy(r.median_mse)) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

}  // namespace igk::cli
