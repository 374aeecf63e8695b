#include "io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "hetspec/errors.hpp"

namespace hetspec::cli {

namespace {

std::string format_value(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "# hetspec-csv v1\n";
    for (const auto& [key, value] : table.metadata)
        out << "# " << key << " = " << value << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << table.columns[c] << (c + 1 < table.columns.size() ? "," : "\n");
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << format_value(row[c]) << (c + 1 < row.size() ? "," : "\n");
    }
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<SvgSeries>& series) {
    constexpr double W = 720, H = 440;
    constexpr double ML = 70, MR = 20, MT = 40, MB = 50;

    double xmin = std::numeric_limits<double>::max(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
        for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    }
    if (!(xmax > xmin)) { xmin -= 1.0; xmax += 1.0; }
    if (!(ymax > ymin)) { ymin -= 1.0; ymax += 1.0; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='"
        << H << "' viewBox='0 0 " << W << " " << H << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << W / 2 << "' y='24' text-anchor='middle' "
           "font-family='sans-serif' font-size='16'>" << title << "</text>\n";
    // axes box and ticks
    out << "<rect x='" << ML << "' y='" << MT << "' width='" << W - ML - MR
        << "' height='" << H - MT - MB
        << "' fill='none' stroke='black' stroke-width='1'/>\n";
    for (int t = 0; t <= 5; ++t) {
        const double xv = xmin + (xmax - xmin) * t / 5.0;
        const double yv = ymin + (ymax - ymin) * t / 5.0;
        char label[32];
        out << "<line x1='" << px(xv) << "' y1='" << H - MB << "' x2='" << px(xv)
            << "' y2='" << H - MB + 5 << "' stroke='black'/>\n";
        std::snprintf(label, sizeof(label), "%.4g", xv);
        out << "<text x='" << px(xv) << "' y='" << H - MB + 18
            << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
            << label << "</text>\n";
        out << "<line x1='" << ML - 5 << "' y1='" << py(yv) << "' x2='" << ML
            << "' y2='" << py(yv) << "' stroke='black'/>\n";
        std::snprintf(label, sizeof(label), "%.4g", yv);
        out << "<text x='" << ML - 8 << "' y='" << py(yv) + 4
            << "' text-anchor='end' font-family='sans-serif' font-size='11'>"
            << label << "</text>\n";
    }
    out << "<text x='" << W / 2 << "' y='" << H - 12
        << "' text-anchor='middle' font-family='sans-serif' font-size='13'>"
        << x_label << "</text>\n";
    out << "<text x='16' y='" << H / 2
        << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
           "transform='rotate(-90 16 " << H / 2 << ")'>" << y_label << "</text>\n";

    double legend_y = MT + 16;
    for (const auto& s : series) {
        if (s.x.empty()) continue;
        out << "<polyline fill='none' stroke='" << s.color
            << "' stroke-width='1.5' points='";
        for (std::size_t k = 0; k < s.x.size(); ++k)
            out << px(s.x[k]) << "," << py(s.y[k]) << " ";
        out << "'/>\n";
        if (!s.label.empty()) {
            out << "<line x1='" << W - MR - 150 << "' y1='" << legend_y << "' x2='"
                << W - MR - 120 << "' y2='" << legend_y << "' stroke='" << s.color
                << "' stroke-width='2'/>\n"
                << "<text x='" << W - MR - 114 << "' y='" << legend_y + 4
                << "' font-family='sans-serif' font-size='12'>" << s.label
                << "</text>\n";
            legend_y += 18;
        }
    }
    out << "</svg>\n";
}

} // namespace hetspec::cli
